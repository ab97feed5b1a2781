"""Non-associative polynomials: finite linear combinations of words.

A :class:`Poly` is an element of the free algebra on its variables.  It has
no constant term.  The text syntax is a signed sum of ``coef * word`` terms,
e.g. ``x(yz) - (xy)z + 1/2 (xy)(zx)``; a missing coefficient means 1.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import FieldMismatch, NotEnoughElements, ParseError
from .fields import QQ, Field, distinct_scalars
from .linalg import Matrix, rref, zero_vector
from .words import Leaf, Node, Word, WordParser, letter_key, print_word

__all__ = [
    "Poly",
    "TypeVector",
    "parse_poly",
    "poly_mul",
    "homogeneous_components",
    "substitute",
    "vandermonde_split",
    "degree_split",
]


class Poly:
    """Immutable polynomial; ``terms`` maps Word to a non-zero raw scalar."""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[Word, object] | None = None):
        self.field = field
        clean = {}
        for w, c in (terms or {}).items():
            c = field(c)
            if c:
                clean[w] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @classmethod
    def word(cls, w: Word, field: Field = QQ, coef=1) -> "Poly":
        return cls(field, {w: coef})

    @classmethod
    def var(cls, name: str, field: Field = QQ) -> "Poly":
        return cls(field, {Leaf(name): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, w: Word):
        return self._terms.get(w, self.field.zero)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, tuple(self._terms.items())))
        return self._hash

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        out = dict(self._terms)
        for w, c in other.items():
            out[w] = f.add(out.get(w, f.zero), c)
        return Poly(f, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, {w: self.field.neg(c) for w, c in self.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self.field, {w: self.field.mul(c, a) for w, a in self.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def variables(self) -> list:
        names = set()
        for w in self._terms:
            names.update(w.letters())
        return sorted(names, key=letter_key)

    def total_degree(self) -> int:
        return max((w.length for w in self._terms), default=0)

    def degree_in(self, variable: str) -> int:
        return max((w.degree(variable) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(homogeneous_components(self)) <= 1

    def is_multilinear(self) -> bool:
        return all(max(w.letters().values()) == 1 for w in self._terms)

    def with_field(self, field: Field) -> "Poly":
        """Reinterpret coefficients in another field (rational coefficients only)."""
        if field == self.field:
            return self
        if self.field.is_finite:
            raise FieldMismatch(f"cannot move coefficients from {self.field} to {field}")
        return Poly(field, self._terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    f = p.field
    out = []
    for i, (w, c) in enumerate(p.items()):
        neg = (not f.is_finite) and c < 0
        mag = -c if neg else c
        s = print_word(w)
        if mag != 1:
            s = f"{f.format(mag)} {s}"
        if i == 0:
            out.append("-" + s if neg else s)
        else:
            out.append((" - " if neg else " + ") + s)
    return "".join(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Bilinear extension of the word product."""
    p._check(q)
    f = p.field
    out = {}
    for u, a in p.items():
        for v, b in q.items():
            w = Node(u, v)
            out[w] = f.add(out.get(w, f.zero), f.mul(a, b))
    return Poly(f, out)


class TypeVector(tuple):
    """Sorted ``(variable, degree)`` pairs of a monomial; zero degrees omitted."""

    @classmethod
    def of(cls, w: Word) -> "TypeVector":
        return cls(sorted(w.letters().items(), key=lambda kv: letter_key(kv[0])))

    def as_dict(self) -> dict:
        return dict(self)

    @property
    def total(self) -> int:
        return sum(k for _, k in self)

    def __str__(self):
        return "(" + ",".join(f"{v}:{k}" for v, k in self) + ")"


def homogeneous_components(p: Poly) -> dict:
    """Split ``p`` by monomial type; keys are :class:`TypeVector`."""
    groups = defaultdict(dict)
    for w, c in p.items():
        groups[TypeVector.of(w)][w] = c
    keys = sorted(groups, key=lambda t: (t.total, [(letter_key(v), k) for v, k in t]))
    return {k: Poly(p.field, groups[k]) for k in keys}


def degree_split(p: Poly, variable: str) -> list:
    """``[φ_0, ..., φ_k]`` where φ_i collects the monomials of degree i in ``variable``."""
    k = p.degree_in(variable)
    parts = [dict() for _ in range(k + 1)]
    for w, c in p.items():
        parts[w.degree(variable)][w] = c
    return [Poly(p.field, t) for t in parts]


# -- parsing -------------------------------------------------------------------


def _read_scalar(parser: WordParser):
    t = parser.text
    parser.skip_ws()
    i = j = parser.pos
    while j < len(t) and t[j].isdigit():
        j += 1
    if j == i:
        return None
    num = int(t[i:j])
    den = 1
    k = j
    while k < len(t) and t[k].isspace():
        k += 1
    if k < len(t) and t[k] == "/":
        k += 1
        while k < len(t) and t[k].isspace():
            k += 1
        m = k
        while m < len(t) and t[m].isdigit():
            m += 1
        if m == k:
            parser.error("expected a denominator", k)
        den = int(t[k:m])
        if den == 0:
            parser.error("zero denominator", k)
        j = m
    parser.pos = j
    return Fraction(num, den)


def parse_terms(parser: WordParser, stop: str = ""):
    """Read ``[sign] [scalar ['*']] word`` terms until end of text or a ``stop`` char."""
    terms = []
    first = True
    while True:
        c = parser.peek()
        sign = 1
        if c in "+-" and c:
            sign = -1 if c == "-" else 1
            parser.pos += 1
        elif not first:
            break
        start = parser.pos
        coef = _read_scalar(parser)
        if parser.peek() == "*":
            if coef is None:
                parser.error("'*' without a coefficient")
            parser.pos += 1
        nxt = parser.peek()
        if nxt == "" or nxt in "+-" or (stop and nxt in stop):
            if coef is None:
                parser.error("expected a term", start)
            if coef != 0:
                parser.error("constant terms are not allowed", start)
            terms.append((0, None))
        else:
            w = parser.parse_word()
            terms.append((sign * (1 if coef is None else coef), w))
        first = False
        if parser.at_end() or (stop and parser.peek() in stop):
            break
    return terms


def parse_poly(text: str, field: Field = QQ, letters: Sequence[str] | None = None) -> Poly:
    """Parse a polynomial; coefficients are read as fractions then coerced into ``field``."""
    parser = WordParser(text, letters)
    if parser.at_end():
        raise ParseError("empty polynomial", text, 0)
    terms = parse_terms(parser)
    if not parser.at_end():
        parser.error(f"unexpected {parser.peek()!r}")
    out = {}
    for c, w in terms:
        if w is None:
            continue
        out[w] = field.add(out.get(w, field.zero), field(c))
    return Poly(field, out)


# -- evaluation ----------------------------------------------------------------


def _eval_word(w: Word, algebra, values: Mapping[str, tuple], cache: dict):
    r = cache.get(w)
    if r is not None:
        return r
    if isinstance(w, Leaf):
        r = values.get(w.letter)
        if r is None:
            r = algebra.zero()
    else:
        r = algebra.mul(_eval_word(w.left, algebra, values, cache), _eval_word(w.right, algebra, values, cache))
    cache[w] = r
    return r


def substitute(p: Poly, algebra, assignment: Mapping[str, Sequence]) -> tuple:
    """Evaluate ``p`` in ``algebra``; unassigned variables are sent to 0."""
    if p.field != algebra.field:
        raise FieldMismatch(f"polynomial over {p.field}, algebra over {algebra.field}")
    f = algebra.field
    values = {k: tuple(f(a) for a in v) for k, v in assignment.items()}
    cache = {}
    out = [f.zero] * algebra.dim
    for w, c in p.items():
        v = _eval_word(w, algebra, values, cache)
        for k, a in enumerate(v):
            if a:
                out[k] = f.add(out[k], f.mul(c, a))
    return tuple(out)


def vandermonde_split(p: Poly, variable: str, algebra, args) -> list:
    """Recover φ_0(a), ..., φ_k(a) from k+1 evaluations of ``p`` at scaled inputs.

    ``args`` is a mapping variable -> element, or a sequence in the order of
    ``p.variables()``.  ``p`` is evaluated with ``variable`` scaled by the
    distinct scalars 0, 1, ..., k and the Vandermonde system is solved exactly.
    """
    f = algebra.field
    if p.field != f:
        raise FieldMismatch(f"polynomial over {p.field}, algebra over {f}")
    if not isinstance(args, Mapping):
        args = dict(zip(p.variables(), args))
    k = p.degree_in(variable)
    alphas = distinct_scalars(f, k + 1)  # NotEnoughElements when the field is too small
    base = tuple(args.get(variable, zero_vector(f, algebra.dim)))
    evaluations = []
    for alpha in alphas:
        scaled = dict(args)
        scaled[variable] = tuple(f.mul(alpha, a) for a in base)
        evaluations.append(substitute(p, algebra, scaled))
    # augmented system [V | E] with V[j][i] = alpha_j^i
    rows = []
    for alpha, e in zip(alphas, evaluations):
        rows.append(tuple(f.power(alpha, i) for i in range(k + 1)) + tuple(e))
    red, piv = rref(Matrix(f, k + 1, k + 1 + algebra.dim, tuple(rows)))
    if tuple(piv[: k + 1]) != tuple(range(k + 1)):
        raise NotEnoughElements("Vandermonde matrix is singular")
    return [tuple(red.rows[i][k + 1 :]) for i in range(k + 1)]
