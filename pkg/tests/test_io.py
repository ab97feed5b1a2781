import random
from fractions import Fraction
from pathlib import Path

import pytest

from _support import random_algebra
from nonassoc import GF, QQ, NotMultiplicative, ParseError
from nonassoc.io import (
    format_algebra,
    format_morphism,
    load_algebra,
    load_morphism,
    load_variety,
    parse_algebra,
    parse_element,
    parse_morphism,
    parse_variety,
    resolve_variety,
)

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.parametrize("seed", range(20))
def test_algebra_round_trip(seed):
    rng = random.Random(seed)
    fld = rng.choice([QQ, GF(2), GF(5)])
    a = random_algebra(rng, fld, rng.randint(0, 4))
    text = format_algebra(a)
    assert parse_algebra(text) == a
    assert format_algebra(parse_algebra(text)) == text


def test_sample_files_load():
    z = load_algebra(DATA / "z2ex.alg")
    assert z.field == GF(2) and z.basis_names == ("x", "y")
    assert z.format_element(z.mul(z.basis(0), z.basis(0))) == "y"
    f = load_morphism(DATA / "even_incl.map")
    assert f.injective and not f.surjective


def test_elements():
    assert parse_element("e1 - 1/2 e3", ["e1", "e2", "e3"], QQ) == (1, 0, Fraction(-1, 2))
    assert parse_element("x + x", ["x"], GF(2)) == (0,)
    with pytest.raises(ParseError):
        parse_element("e1e2", ["e1", "e2"], QQ)
    with pytest.raises(ParseError):
        parse_element("", ["e1"], QQ)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("basis x\nx * x = x", "line 2"),
        ("field Q\nbasis x\nx * y = x", "unknown basis element 'y'"),
        ("field Q\nbasis x\nx * x = x\nx * x = 0", "given twice"),
        ("field Q\nbasis x x", "repeated basis name"),
        ("field GF(4)\nbasis x", "not prime"),
        ("field Q\nbasis x\nx x = x", "left side"),
        ("field Q", "missing 'basis'"),
    ],
)
def test_algebra_parse_errors(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_algebra(text)
    assert fragment in str(e.value)


def test_comments_and_blank_lines():
    a = parse_algebra("# header\n\nfield Q  # rationals\nbasis a b\na * a = 2 b  # square\n")
    assert a.mul(a.basis(0), a.basis(0)) == (0, 2)


def test_morphism_files(tmp_path):
    src = tmp_path / "s.alg"
    src.write_text("field Q\nbasis u v\nu * u = v\n")
    tgt = tmp_path / "t.alg"
    tgt.write_text("field Q\nbasis x y z\nx * x = y\n")
    m = tmp_path / "f.map"
    m.write_text("source s.alg\ntarget t.alg\nmap\nu -> x + z\nv -> y\n")
    f = load_morphism(m)
    assert format_morphism(f) == "map\nu -> x + z\nv -> y\n"
    a, b = f.source, f.target
    assert parse_morphism(format_morphism(f), a, b) == f
    with pytest.raises(ParseError, match="not known"):
        parse_morphism("u -> x")
    with pytest.raises(ParseError, match="unknown source basis element"):
        parse_morphism("q -> x", a, b)


def test_non_multiplicative_morphism_file_is_rejected(tmp_path):
    a = parse_algebra("field Q\nbasis u v\nu * u = v\n")
    with pytest.raises(NotMultiplicative):
        parse_morphism("u -> u\nv -> 0", a, a)


def test_variety_files(tmp_path):
    v = load_variety(DATA / "homog.var")
    assert len(v) >= 1
    p = tmp_path / "lie.var"
    p.write_text("variety mylie\nfield GF(3)\nxx\nx(yz) + z(xy) + y(zx)\n")
    w = load_variety(p)
    assert w.name == "mylie" and w.field == GF(3) and len(w) == 2
    assert resolve_variety(str(p), GF(3)) == w
    assert resolve_variety("lie").name == "lie"
    with pytest.raises(KeyError):
        resolve_variety("no-such-variety")
    with pytest.raises(ParseError, match="line 2"):
        parse_variety("xy\nx(y")
