"""CLI golden cases shared by the CLI tests and the determinism criterion.

Regenerate the stored outputs with ``python3 tests/_cli_cases.py --update``.
"""

import contextlib
import io
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from nonassoc.cli import main

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@dataclass(frozen=True)
class Case:
    name: str
    argv: tuple
    expected_code: int

    @property
    def golden_path(self) -> Path:
        return GOLDEN_DIR / f"{self.name}.out"


def run_cli(argv) -> tuple:
    """Run the CLI in-process from the repo root; returns (exit code, stdout+stderr bytes)."""
    out = io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(out):
            code = main(list(argv))
    finally:
        os.chdir(cwd)
    return code, out.getvalue().encode()


def _c(name, code, *argv):
    return Case(name, tuple(argv), code)


GOLDEN = [
    _c("check_z2_xx", 1, "check-identity", "--algebra", "data/z2ex.alg", "--poly", "xx"),
    _c("check_z2_anticomm", 0, "check-identity", "--algebra", "data/z2ex.alg", "--poly", "xy + yx"),
    _c("check_z2_qlie_json", 0, "check-identity", "--algebra", "data/z2ex.alg", "--variety", "qlie", "--format", "json"),
    _c("check_z2_lie", 1, "check-identity", "--algebra", "data/z2ex.alg", "--variety", "lie"),
    _c("implied_alt_anti", 0, "implied", "--variety", "alternating", "--poly", "xy + yx", "--degree", "2"),
    _c("implied_anti_alt_gf2", 1, "implied", "--variety", "anticomm", "--poly", "xx", "--degree", "2", "--field", "GF(2)"),
    _c("subalgebra_even", 0, "subalgebra", "--algebra", "data/trunc4.alg", "--poly", "x2", "--poly", "x4"),
    _c("quotient_not_ideal", 2, "quotient", "--algebra", "data/trunc4.alg", "--poly", "x2", "--poly", "x4"),
    _c("quotient_ideal", 0, "quotient", "--algebra", "data/trunc4.alg", "--poly", "x3", "--poly", "x4"),
    _c("ideal_even", 0, "ideal", "--algebra", "data/trunc4.alg", "--poly", "x2", "--poly", "x4"),
    _c("cokernel_even", 0, "cokernel", "--map", "data/even_incl.map"),
    _c("free_alg_x3", 0, "free", "--variety", "alg", "--letters", "x", "--degree", "3"),
    _c("free_lie_xy2_json", 0, "free", "--variety", "lie", "--letters", "x,y", "--degree", "2", "--format", "json"),
    _c("coproduct_comm", 0, "coproduct", "--algebra", "data/ab_b.alg", "--algebra", "data/ab_x.alg", "--variety", "comm", "--degree", "2"),
    _c("flat_alg", 0, "flat", "--algebra", "data/ab_b.alg", "--algebra", "data/ab_x.alg", "--variety", "alg", "--degree", "2"),
    _c("coherence_assoc", 0, "coherent", "--algebra", "data/ab_b.alg", "--algebra", "data/ab_x.alg", "--algebra", "data/ab_y.alg", "--variety", "assoc", "--degree", "3"),
    _c("coherence_alg", 1, "coherent", "--algebra", "data/ab_b.alg", "--algebra", "data/ab_x.alg", "--algebra", "data/ab_y.alg", "--variety", "alg", "--degree", "3"),
    _c("orzech_qlie", 0, "orzech", "--variety", "qlie", "--lambda", "-1,-1,0,...,0"),
    _c("kernel_even", 0, "kernel", "--map", "data/even_incl.map"),
    _c("exact_even", 0, "exact", "--map", "data/even_incl.map"),
    _c("reflect_z2_comm", 0, "reflect", "--algebra", "data/z2ex.alg", "--variety", "comm"),
    _c("derivations_gl2", 0, "derivations", "--algebra", "data/gl2.alg"),
    _c("commutator_gl2", 0, "commutator", "--algebra", "data/gl2.alg"),
    _c("homog_split", 0, "homog", "--poly", "xy - yx + (xy)z"),
    _c("homogeneous_json", 0, "homog", "--variety", "data/homog.var", "--degree", "4", "--format", "json"),
    _c("parse_error", 2, "check-identity", "--algebra", "data/z2ex.alg", "--poly", "x(y"),
    _c("budget_exceeded", 3, "free", "--variety", "alg", "--letters", "x,y,z", "--degree", "5", "--budget-words", "10"),
]


def _update():
    GOLDEN_DIR.mkdir(exist_ok=True)
    for case in GOLDEN:
        code, data = run_cli(case.argv)
        case.golden_path.write_bytes(data)
        flag = "" if code == case.expected_code else f"  (exit {code}, expected {case.expected_code})"
        print(f"{case.name}: exit {code}{flag}")


if __name__ == "__main__":
    sys.path.insert(0, str(ROOT / "src"))
    if "--update" in sys.argv:
        _update()
