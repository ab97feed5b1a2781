import json
import random
import subprocess
import sys

import pytest

from _cli_cases import GOLDEN, ROOT, run_cli
from _support import scrambled_split_diagram
from nonassoc import GF
from nonassoc.cli import main
from nonassoc.io import format_algebra, format_morphism


@pytest.mark.parametrize("case", GOLDEN, ids=[c.name for c in GOLDEN])
def test_golden_output(case):
    code, out = run_cli(case.argv)
    assert code == case.expected_code
    assert out.decode() == case.golden_path.read_text()


def test_json_envelope():
    code, out = run_cli(["free", "--variety", "lie", "--letters", "x,y", "--degree", "3", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == 1 and data["command"] == "free" and data["exit_code"] == 0
    assert data["dim"] == 5


def test_json_for_false_property_still_reports():
    code, out = run_cli(["check-identity", "--algebra", "data/z2ex.alg", "--poly", "xx", "--format", "json"])
    data = json.loads(out)
    assert code == data["exit_code"] == 1


def test_orzech_both_equations():
    code, out = run_cli(["orzech", "--variety", "qlie", "--lambda", "-1,-1,0,...,0", "--equations", "1,2"])
    assert code == 1
    assert b"equation 2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check-identity", "--algebra", "data/missing.alg", "--poly", "xx"],
        ["check-identity", "--algebra", "data/z2ex.alg", "--variety", "nonsense"],
        ["free", "--variety", "alg"],
        ["free", "--variety", "alg", "--letters", "x", "--degree", "0"],
        ["implied", "--variety", "lie", "--poly", "x(yz)", "--degree", "2"],
        ["orzech", "--variety", "qlie", "--lambda", "1,2,3"],
        ["split-five", "--map", "f=data/even_incl.map"],
    ],
)
def test_input_errors_exit_2(argv):
    code, out = run_cli(argv)
    assert code == 2
    assert out.startswith(b"error: ")


def test_default_degree_is_four():
    code, out = run_cli(["free", "--variety", "alg", "--letters", "x"])
    assert code == 0 and b"degree <= 4" in out and b"dimension 9" in out


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["free", "--format", "yaml"])
    assert e.value.code == 2


def test_split_five_from_files(tmp_path):
    d = scrambled_split_diagram(random.Random(0), GF(3), 1, 1)
    files = {}
    for name, m in d.items():
        for end, alg in (("src", m.source), ("tgt", m.target)):
            p = tmp_path / f"{name}_{end}.alg"
            p.write_text(format_algebra(alg))
        mp = tmp_path / f"{name}.map"
        mp.write_text(f"source {name}_src.alg\ntarget {name}_tgt.alg\n" + format_morphism(m))
        files[name] = mp
    argv = ["split-five"] + [x for n, p in files.items() for x in ("--map", f"{n}={p}")]
    code, out = run_cli(argv)
    assert code == 0, out


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "nonassoc.cli", "free", "--variety", "alg", "--letters", "x", "--degree", "3"],
        cwd=ROOT, capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert out.stdout.encode() == (ROOT / "tests" / "golden" / "free_alg_x3.out").read_bytes()
