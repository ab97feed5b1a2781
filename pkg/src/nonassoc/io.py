"""Plain-text formats for algebras, morphisms and varieties.

Algebra file::

    # the nilpotent algebra with xx = y
    field GF(2)
    basis x y
    x * x = y

Every product line reads ``a * b = <linear combination of basis names>``;
products that are not listed are zero.

Morphism file::

    source a.alg        # optional, resolved relative to this file
    target b.alg
    map
    x -> u + 2 v

Basis elements without a line map to 0.

Variety file::

    variety lie
    field Q
    xx
    x(yz) + z(xy) + y(zx)

``#`` starts a comment everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .algebra import FdAlgebra, Morphism, make_morphism
from .errors import ParseError
from .fields import QQ, Field, parse_field
from .linalg import Matrix
from .polys import parse_poly, parse_terms
from .varieties import IdentitySet, preset
from .words import Leaf, WordParser

__all__ = [
    "parse_algebra",
    "load_algebra",
    "format_algebra",
    "parse_morphism",
    "load_morphism",
    "format_morphism",
    "parse_variety",
    "load_variety",
    "resolve_variety",
    "parse_element",
]


def _lines(text: str):
    """``(line number, stripped content)`` for non-blank lines, comments removed."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _located(err: ParseError, no: int, source: str) -> ParseError:
    where = f"{source}:{no}" if source else f"line {no}"
    return ParseError(f"{where}: {err.message}", err.text, err.position)


def parse_element(text: str, names: Sequence[str], field: Field) -> tuple:
    """Coordinates of a linear combination of basis names such as ``e1 - 1/2 e3``."""
    parser = WordParser(text, names)
    if parser.at_end():
        raise ParseError("empty expression", text, 0)
    terms = parse_terms(parser)
    if not parser.at_end():
        parser.error(f"unexpected {parser.peek()!r}")
    out = [field.zero] * len(names)
    index = {n: k for k, n in enumerate(names)}
    for c, w in terms:
        if w is None:
            continue
        if not isinstance(w, Leaf):
            raise ParseError("only basis names may appear here, not products", text, 0)
        out[index[w.letter]] = field.add(out[index[w.letter]], field(c))
    return tuple(out)


def parse_algebra(text: str, source: str = "") -> FdAlgebra:
    field = None
    names = None
    table = {}
    for no, line in _lines(text):
        try:
            head = line.split(None, 1)
            if head[0] == "field":
                if field is not None:
                    raise ParseError("duplicate field line", line, 0)
                field = parse_field(line)
                continue
            if head[0] == "basis":
                if names is not None:
                    raise ParseError("duplicate basis line", line, 0)
                names = head[1].split() if len(head) > 1 else []
                bad = [n for n in names if not (n[0].isalpha() and n.replace("_", "a").isalnum())]
                if bad:
                    raise ParseError(f"invalid basis name {bad[0]!r}", line, line.index(bad[0]))
                if len(set(names)) != len(names):
                    raise ParseError("repeated basis name", line, 0)
                continue
            if field is None or names is None:
                raise ParseError("expected 'field' and 'basis' lines before products", line, 0)
            if "=" not in line:
                raise ParseError("expected 'a * b = ...'", line, 0)
            lhs, rhs = line.split("=", 1)
            parts = lhs.split("*")
            if len(parts) != 2:
                raise ParseError("left side must be 'a * b'", line, 0)
            a, b = (s.strip() for s in parts)
            for s in (a, b):
                if s not in names:
                    raise ParseError(f"unknown basis element {s!r}", line, line.find(s) if s else 0)
            i, j = names.index(a), names.index(b)
            if (i, j) in table:
                raise ParseError(f"product {a} * {b} given twice", line, 0)
            try:
                table[(i, j)] = parse_element(rhs, names, field)
            except ParseError as e:
                raise ParseError(e.message, line, len(lhs) + 1 + e.position) from None
        except ParseError as e:
            raise _located(e, no, source) from None
    if field is None:
        raise ParseError(f"{source or 'algebra'}: missing 'field' line")
    if names is None:
        raise ParseError(f"{source or 'algebra'}: missing 'basis' line")
    return FdAlgebra(field, names, table)


def load_algebra(path) -> FdAlgebra:
    p = Path(path)
    return parse_algebra(p.read_text(), str(path))


def format_algebra(a: FdAlgebra) -> str:
    """Inverse of :func:`parse_algebra`; pairs in basis order."""
    out = [f"field {a.field}", "basis" + "".join(f" {n}" for n in a.basis_names)]
    for i in range(a.dim):
        for j in range(a.dim):
            v = a.product(i, j)
            if any(v):
                out.append(f"{a.basis_names[i]} * {a.basis_names[j]} = {a.format_element(v)}")
    return "\n".join(out) + "\n"


def parse_morphism(text: str, source: FdAlgebra | None = None, target: FdAlgebra | None = None, origin: str = "") -> Morphism:
    """Parse a morphism file; ``source``/``target`` lines override the arguments."""
    base = Path(origin).parent if origin else Path(".")
    images = {}
    body = []
    for no, line in _lines(text):
        head = line.split(None, 1)
        if head[0] in ("source", "target") and len(head) == 2 and "->" not in line:
            try:
                alg = load_algebra(base / head[1])
            except OSError as e:
                raise ParseError(f"{origin}:{no}: cannot read {head[1]}: {e.strerror}") from None
            if head[0] == "source":
                source = alg
            else:
                target = alg
        elif line == "map":
            continue
        else:
            body.append((no, line))
    if source is None or target is None:
        raise ParseError(f"{origin or 'morphism'}: source and target algebras are not known")
    field = source.field
    for no, line in body:
        try:
            if line.startswith("map "):
                line = line[4:].strip()
            if "->" not in line:
                raise ParseError("expected 'e -> combination'", line, 0)
            lhs, rhs = line.split("->", 1)
            name = lhs.strip()
            if name not in source.basis_names:
                raise ParseError(f"unknown source basis element {name!r}", line, 0)
            if name in images:
                raise ParseError(f"image of {name} given twice", line, 0)
            try:
                images[name] = parse_element(rhs, target.basis_names, field)
            except ParseError as e:
                raise ParseError(e.message, line, len(lhs) + 2 + e.position) from None
        except ParseError as e:
            raise _located(e, no, origin) from None
    cols = [images.get(n, target.zero()) for n in source.basis_names]
    return make_morphism(source, target, Matrix.from_columns(field, cols, target.dim))


def load_morphism(path, source: FdAlgebra | None = None, target: FdAlgebra | None = None) -> Morphism:
    p = Path(path)
    return parse_morphism(p.read_text(), source, target, str(path))


def format_morphism(f: Morphism) -> str:
    out = ["map"]
    for n, col in zip(f.source.basis_names, f.matrix.columns()):
        out.append(f"{n} -> {f.target.format_element(col)}")
    return "\n".join(out) + "\n"


def parse_variety(text: str, source: str = "", field: Field | None = None) -> IdentitySet:
    name = Path(source).stem if source else "custom"
    fld = None
    polys = []
    for no, line in _lines(text):
        try:
            head = line.split(None, 1)
            if head[0] == "variety" and len(head) == 2 and not polys:
                name = head[1]
            elif head[0] == "field":
                fld = parse_field(line)
            else:
                polys.append(parse_poly(line, fld or field or QQ))
        except ParseError as e:
            raise _located(e, no, source) from None
    fld = fld or field or QQ
    vs = IdentitySet(name, fld, tuple(p for p in polys if p))
    return vs.over(field) if field is not None and field != fld else vs


def load_variety(path, field: Field | None = None) -> IdentitySet:
    p = Path(path)
    return parse_variety(p.read_text(), str(path), field)


def resolve_variety(spec: str, field: Field = QQ) -> IdentitySet:
    """A preset name, or a path to a variety file."""
    try:
        return preset(spec, field)
    except KeyError:
        if Path(spec).exists():
            return load_variety(spec, field)
        raise
