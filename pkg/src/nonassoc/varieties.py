"""Varieties of algebras presented by polynomial identities.

Two ways of quantifying over all elements of an algebra are offered:

* generic evaluation: every variable becomes ``sum_i t[v, i] e_i`` with
  formal scalars ``t`` and the result is expanded as a polynomial in the
  ``t``.  Over Q the identity holds iff every coefficient vector vanishes and
  the span of values equals the span of coefficient vectors.
* exhaustive evaluation over GF(p), vectorised through the kernels in
  :mod:`nonassoc._kernels`.

A third mode, ``reduced``, folds exponents with t^p = t before collecting
coefficients.  Over GF(p) the reduced monomials are linearly independent as
functions, so the reduced coefficient span equals the span of all values.
Truncated free algebras over GF(p) rely on it because exhaustive enumeration
of a free algebra is hopeless.

Everything "free" is computed inside the span of words of length at most d,
with longer products set to zero.
"""

from __future__ import annotations

import functools
import warnings
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import _kernels
from .algebra import (
    FdAlgebra,
    Morphism,
    generated_ideal,
    generated_subalgebra,
    kernel,
    make_morphism,
    quotient,
)
from .errors import (
    BudgetExceeded,
    DegreeTooSmall,
    FieldMismatch,
    ModeUnsoundWarning,
    NotMultiplicative,
)
from .fields import QQ, Field
from .linalg import Echelon, Matrix, Subspace, span
from .polys import Poly, TypeVector, homogeneous_components, parse_poly, substitute
from .words import Leaf, Node, Word, enumerate_words, letter_key, print_word

__all__ = [
    "IdentitySet",
    "PRESETS",
    "preset",
    "GenericElement",
    "generic_evaluation",
    "IdentityReport",
    "check_identity",
    "identity_holds",
    "check_variety",
    "relation_subspace",
    "identity_ideal",
    "reflect",
    "TruncatedFreeAlgebra",
    "truncated_free",
    "identity_implied",
    "homogeneous_closure_check",
    "truncated_coproduct",
    "CoproductResult",
    "flat",
    "coherence_probe",
    "orzech_polys",
    "orzech_check",
    "DEFAULT_BUDGET",
    "DEFAULT_WORD_BUDGET",
]

DEFAULT_BUDGET = 10**6
DEFAULT_WORD_BUDGET = 2000
MODES = ("symbolic", "exhaustive", "reduced")


# -- identity sets -------------------------------------------------------------------


@dataclass(frozen=True)
class IdentitySet:
    name: str
    field: Field
    polys: tuple

    def __post_init__(self):
        for p in self.polys:
            if not p:
                raise ValueError("identities must be nonzero")
            if p.field != self.field:
                raise FieldMismatch(f"identity {p} is over {p.field}, variety over {self.field}")

    @classmethod
    def from_strings(cls, name: str, polys: Sequence[str], field: Field = QQ) -> "IdentitySet":
        return cls(name, field, tuple(parse_poly(s, field) for s in polys))

    def over(self, field: Field) -> "IdentitySet":
        if field == self.field:
            return self
        return IdentitySet(self.name, field, tuple(p.with_field(field) for p in self.polys if p.with_field(field)))

    def max_degree(self) -> int:
        return max((p.total_degree() for p in self.polys), default=0)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


_JACOBI = "x(yz) + z(xy) + y(zx)"

PRESETS = {
    "alg": [],
    "assoc": ["(xy)z - x(yz)"],
    "comm": ["xy - yx"],
    "alternative": ["x(xy) - (xx)y", "(yx)x - y(xx)"],
    "antiassoc": ["x(yz) + (xy)z"],
    "abelian": ["xy"],
    "alternating": ["xx"],
    "anticomm": ["xy + yx"],
    "lie": ["xx", _JACOBI],
    "qlie": ["xy + yx", _JACOBI],
    "leibniz": ["(xy)z - x(yz) - (xz)y"],
    "jordan": ["xy - yx", "(xy)(xx) - x(y(xx))"],
    "jacobijordan": ["xy - yx", _JACOBI],
}


def preset(name: str, field: Field = QQ) -> IdentitySet:
    key = name.lower().replace("-", "").replace("_", "")
    if key not in PRESETS:
        raise KeyError(f"unknown variety {name!r}; presets: {', '.join(sorted(PRESETS))}")
    return IdentitySet.from_strings(key, PRESETS[key], field)


# -- generic evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class GenericElement:
    """``sum_i t[name, i] e_i`` in an algebra of the given dimension."""

    name: str
    dim: int

    def coordinates(self) -> list:
        return [f"t[{self.name},{i}]" for i in range(self.dim)]


def _sparse_mul(field, mul, u: dict, v: dict) -> dict:
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            entries = mul(i, j)
            if not entries:
                continue
            ab = field.mul(a, b)
            for k, c in entries:
                t = field.add(out.get(k, field.zero), field.mul(ab, c))
                if t:
                    out[k] = t
                else:
                    out.pop(k, None)
    return out


def _expand(poly: Poly, dim: int, mul, weights=None, cap=None) -> dict:
    """Generic evaluation of ``poly``.

    Returns ``{monomial: sparse vector}`` where a monomial is a sorted tuple of
    ``(variable index, basis index)`` with repetition.  With ``weights`` and
    ``cap`` (graded algebras), contributions of total weight above ``cap``
    are dropped; they vanish in a nilpotent truncation anyway.
    """
    f = poly.field
    names = poly.variables()
    vix = {v: k for k, v in enumerate(names)}
    w_of = weights if weights is not None else [0] * dim
    memo = {}

    def ev(w: Word) -> dict:
        r = memo.get(w)
        if r is not None:
            return r
        if isinstance(w, Leaf):
            k = vix[w.letter]
            r = {((k, i),): (w_of[i], {i: f.one}) for i in range(dim) if cap is None or w_of[i] <= cap}
        else:
            left, right = ev(w.left), ev(w.right)
            r = {}
            for m1, (a, u) in left.items():
                for m2, (b, v) in right.items():
                    wt = a + b
                    if cap is not None and wt > cap:
                        continue
                    prod = _sparse_mul(f, mul, u, v)
                    if not prod:
                        continue
                    m = tuple(sorted(m1 + m2))
                    old = r.get(m)
                    if old is None:
                        r[m] = (wt, prod)
                    else:
                        acc = old[1]
                        for k, c in prod.items():
                            t = f.add(acc.get(k, f.zero), c)
                            if t:
                                acc[k] = t
                            else:
                                acc.pop(k, None)
        memo[w] = r
        return r

    total = {}
    for w, c in poly.items():
        for m, (_, vec) in ev(w).items():
            acc = total.setdefault(m, {})
            for k, a in vec.items():
                t = f.add(acc.get(k, f.zero), f.mul(c, a))
                if t:
                    acc[k] = t
                else:
                    acc.pop(k, None)
    return {m: v for m, v in total.items() if v}


def _reduce_exponents(values: dict, field: Field) -> dict:
    """Collect coefficients modulo t^p = t (GF(p) only)."""
    p = field.characteristic
    out = {}
    for m, vec in values.items():
        counts = Counter(m)
        key = tuple(sorted((tv, (e - 1) % (p - 1) + 1) for tv, e in counts.items()))
        acc = out.setdefault(key, {})
        for k, a in vec.items():
            t = field.add(acc.get(k, field.zero), a)
            if t:
                acc[k] = t
            else:
                acc.pop(k, None)
    return {m: v for m, v in out.items() if v}


def generic_evaluation(poly: Poly, algebra: FdAlgebra, reduced: bool = False) -> dict:
    """Coefficient vectors of ``poly`` evaluated at generic elements of ``algebra``.

    Keys are monomials in the formal coordinates; see :func:`_expand`.  With
    ``reduced`` (GF(p) only) exponents are folded by t^p = t.
    """
    _check_field(poly.field, algebra.field)
    vals = _expand(poly, algebra.dim, algebra.product_entries)
    if reduced:
        if not algebra.field.is_finite:
            raise FieldMismatch("exponent reduction needs a finite field")
        vals = _reduce_exponents(vals, algebra.field)
    return vals


def _check_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatch(f"polynomial over {a}, algebra over {b}")


def _dense(vec: dict, n: int, field: Field) -> tuple:
    out = [field.zero] * n
    for k, a in vec.items():
        out[k] = a
    return tuple(out)


# -- identity checking ---------------------------------------------------------------


@dataclass
class IdentityReport:
    poly: Poly
    mode: str
    holds: bool | None  # None: inconclusive
    witness: dict | None = None  # variable -> element
    value: tuple | None = None

    @property
    def status(self) -> str:
        if self.holds is None:
            return "inconclusive, run exhaustive"
        return "holds" if self.holds else "fails"


def _nonzero_point(coeffs: dict, field: Field) -> dict:
    """A point where a nonzero polynomial ``{monomial: c}`` does not vanish.

    Variables are fixed one at a time to the first of 0, 1, ..., deg that
    keeps the polynomial nonzero; such a value exists over Q.
    """
    tvars = sorted({tv for m in coeffs for tv in m})
    point = {}
    poly = dict(coeffs)
    for tv in tvars:
        deg = max(m.count(tv) for m in poly)
        for val in range(deg + 1):
            sub = {}
            for m, c in poly.items():
                e = m.count(tv)
                rest = tuple(x for x in m if x != tv)
                t = field.add(sub.get(rest, field.zero), field.mul(c, field.power(field(val), e)))
                if t:
                    sub[rest] = t
                else:
                    sub.pop(rest, None)
            if sub:
                poly = sub
                point[tv] = val
                break
    return point


def _exhaustive_blocks(poly: Poly, algebra: FdAlgebra, budget: int, block: int = 1 << 14):
    """Yield ``(digits, values)`` blocks covering every assignment of the variables.

    ``digits[:, k*n:(k+1)*n]`` holds the coordinates of variable k.
    """
    fld = algebra.field
    if not fld.is_finite:
        raise FieldMismatch("exhaustive evaluation needs a finite field")
    p, n = fld.characteristic, algebra.dim
    names = poly.variables()
    width = n * len(names)
    total = p**width
    if total > budget:
        raise BudgetExceeded(f"{p}^{width} = {total} assignments exceed the budget of {budget}")
    c = algebra.structure_tensor()
    for start in range(0, total, block):
        cnt = min(block, total - start)
        digits = _kernels.enumerate_block(start, cnt, p, width)
        vals = {v: digits[:, k * n:(k + 1) * n] for k, v in enumerate(names)}
        memo = {}

        def ev(w):
            r = memo.get(w)
            if r is None:
                if isinstance(w, Leaf):
                    r = vals[w.letter]
                else:
                    r = _kernels.batch_mul(ev(w.left), ev(w.right), c, p)
                memo[w] = r
            return r

        out = np.zeros((cnt, n), dtype=np.int64)
        for w, coef in poly.items():
            out = (out + int(coef) * ev(w)) % p
        yield digits, out


def check_identity(algebra: FdAlgebra, poly: Poly, mode: str | None = None, budget: int = DEFAULT_BUDGET) -> IdentityReport:
    """Decide whether ``poly`` vanishes on all of ``algebra``.

    ``mode`` defaults to symbolic over Q and exhaustive over GF(p).  A
    failing report carries a witness assignment and the nonzero value.
    """
    fld = algebra.field
    if poly.field != fld:
        poly = poly.with_field(fld)
    mode = mode or ("exhaustive" if fld.is_finite else "symbolic")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    names = poly.variables()
    n = algebra.dim
    if not poly or n == 0:
        return IdentityReport(poly, mode, True)

    if mode == "exhaustive":
        for digits, out in _exhaustive_blocks(poly, algebra, budget):
            bad = np.nonzero(out.any(axis=1))[0]
            if bad.size:
                row = digits[bad[0]]
                witness = {v: tuple(int(a) for a in row[k * n:(k + 1) * n]) for k, v in enumerate(names)}
                return IdentityReport(poly, mode, False, witness, tuple(int(a) for a in out[bad[0]]))
        return IdentityReport(poly, mode, True)

    vals = generic_evaluation(poly, algebra, reduced=(mode == "reduced"))
    if not vals:
        return IdentityReport(poly, mode, True)
    if mode == "symbolic" and fld.is_finite:
        warnings.warn(
            f"symbolic evaluation of {poly} over {fld} is nonzero; this does not refute the identity",
            ModeUnsoundWarning,
            stacklevel=2,
        )
        return IdentityReport(poly, mode, None)
    if mode == "reduced":
        # a reduced polynomial function is nonzero somewhere; search small tuples
        for digits, out in _exhaustive_blocks(poly, algebra, 10**18):
            bad = np.nonzero(out.any(axis=1))[0]
            if bad.size:
                row = digits[bad[0]]
                witness = {v: tuple(int(a) for a in row[k * n:(k + 1) * n]) for k, v in enumerate(names)}
                return IdentityReport(poly, mode, False, witness, tuple(int(a) for a in out[bad[0]]))
    # pick the first coordinate whose coefficient polynomial is nonzero
    k = min(k for vec in vals.values() for k in vec)
    coeffs = {m: vec[k] for m, vec in vals.items() if k in vec}
    point = _nonzero_point(coeffs, fld)
    vix = {v: i for i, v in enumerate(names)}
    witness = {}
    for v in names:
        witness[v] = tuple(fld(point.get((vix[v], i), 0)) for i in range(n))
    value = substitute(poly, algebra, witness)
    return IdentityReport(poly, mode, False, witness, value)


def identity_holds(algebra: FdAlgebra, poly: Poly, mode: str | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """Boolean form of :func:`check_identity`; inconclusive counts as False (with a warning)."""
    return bool(check_identity(algebra, poly, mode, budget).holds)


def check_variety(algebra: FdAlgebra, variety: IdentitySet, mode: str | None = None, budget: int = DEFAULT_BUDGET) -> list:
    """One report per identity of ``variety``."""
    return [check_identity(algebra, p, mode, budget) for p in variety.over(algebra.field)]


# -- I(A) and the reflection -------------------------------------------------------------


def relation_subspace(algebra: FdAlgebra, variety: IdentitySet, mode: str | None = None, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Span of all values of the identities of ``variety`` in ``algebra``.

    Over Q this is the span of generic coefficient vectors.  Over GF(p) the
    default is exhaustive evaluation; ``mode="reduced"`` gives the same
    subspace from exponent-reduced coefficients without enumeration.
    """
    fld, n = algebra.field, algebra.dim
    mode = mode or ("exhaustive" if fld.is_finite else "symbolic")
    polys = variety.over(fld).polys
    if mode == "symbolic" and fld.is_finite:
        raise FieldMismatch("the coefficient span over GF(p) can exceed the span of values; use exhaustive or reduced")
    if mode in ("symbolic", "reduced"):
        vecs = []
        for p in polys:
            vecs.extend(_dense(v, n, fld) for v in generic_evaluation(p, algebra, reduced=(mode == "reduced")).values())
        return span(vecs, n, fld)
    p = fld.characteristic
    basis = np.zeros((0, n), dtype=np.int64)
    for poly in polys:
        for _, out in _exhaustive_blocks(poly, algebra, budget):
            if len(basis) == n:
                break
            rows = np.unique(out[out.any(axis=1)], axis=0)
            if rows.size:
                red, piv = _kernels.rref_modp(np.vstack([basis, rows]), p)
                basis = red[: len(piv)]
    return span([tuple(int(a) for a in r) for r in basis], n, fld)


def identity_ideal(algebra: FdAlgebra, variety: IdentitySet, mode: str | None = None, budget: int = DEFAULT_BUDGET) -> Subspace:
    """I(A): the ideal generated by all values of the identities."""
    return generated_ideal(algebra, relation_subspace(algebra, variety, mode, budget))


def reflect(algebra: FdAlgebra, variety: IdentitySet, mode: str | None = None, budget: int = DEFAULT_BUDGET):
    """``(L(A), eta)`` with L(A) = A / I(A) and eta the projection."""
    return quotient(algebra, identity_ideal(algebra, variety, mode, budget))


# -- truncated free algebras ---------------------------------------------------------------


class _WordSpace:
    """Span of the words of length <= d with truncated multiplication."""

    def __init__(self, letters: Sequence[str], d: int):
        self.words = enumerate_words(letters, d)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.weights = [w.length for w in self.words]
        self.d = d
        self._mul = {}

    def __len__(self):
        return len(self.words)

    def mul(self, i: int, j: int):
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            if self.weights[i] + self.weights[j] > self.d:
                r = ()
            else:
                r = ((self.index[Node(self.words[i], self.words[j])], 1),)
            self._mul[key] = r
        return r

    def poly_vector(self, p: Poly) -> dict:
        return {self.index[w]: c for w, c in p.items() if w.length <= self.d}


@dataclass
class TruncatedFreeAlgebra:
    """Free algebra of ``variety`` on ``letters`` modulo words longer than ``max_degree``.

    ``carrier`` has the surviving (non-pivot) words as basis; ``word_images``
    sends every word of length <= max_degree to its class in the carrier.
    """

    variety: IdentitySet
    letters: tuple
    max_degree: int
    carrier: FdAlgebra
    word_images: dict
    representatives: tuple
    relations_by_degree: dict
    _space: _WordSpace = dc_field(repr=False)
    _ideal: Echelon = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def class_of(self, p: Poly) -> tuple:
        """Image of a polynomial in the letters (terms above the truncation vanish)."""
        f = self.carrier.field
        if p.field != f:
            p = p.with_field(f)
        out = [f.zero] * self.dim
        for w, c in p.items():
            if w.length > self.max_degree:
                continue
            if w not in self.word_images:
                raise ValueError(f"{print_word(w)} uses letters outside {list(self.letters)}")
            for k, a in enumerate(self.word_images[w]):
                if a:
                    out[k] = f.add(out[k], f.mul(c, a))
        return tuple(out)

    def contains(self, p: Poly) -> bool:
        """Whether ``p`` lies in the truncated T-ideal, i.e. is zero in the carrier."""
        return not any(self.class_of(p))

    def dims_by_degree(self) -> dict:
        out = {n: 0 for n in range(1, self.max_degree + 1)}
        for w in self.representatives:
            out[w.length] += 1
        return out


def _letter_names(letters) -> tuple:
    if isinstance(letters, str):
        letters = [s.strip() for s in letters.split(",") if s.strip()]
    letters = tuple(letters)
    if len(set(letters)) != len(letters):
        raise ValueError(f"repeated letters in {letters}")
    return letters


def truncated_free(
    variety: IdentitySet, letters, d: int, budget: int = DEFAULT_WORD_BUDGET, relations: Sequence[Poly] = ()
) -> TruncatedFreeAlgebra:
    """Free ``variety``-algebra on ``letters`` cut off above degree ``d``.

    ``relations`` are extra polynomials in the letters whose generated ideal
    is factored out as well (used for coproducts).
    """
    letters = _letter_names(letters)
    if d < 1:
        raise DegreeTooSmall("the truncation degree must be at least 1")
    rel = tuple(p.with_field(variety.field) for p in relations)
    return _truncated_free(variety, letters, d, budget, rel)


@functools.lru_cache(maxsize=64)
def _truncated_free(variety: IdentitySet, letters: tuple, d: int, budget: int, relations: tuple) -> TruncatedFreeAlgebra:
    fld = variety.field
    n_words = sum(_word_count(len(letters), k) for k in range(1, d + 1))
    if n_words > budget:
        raise BudgetExceeded(f"{n_words} words of length <= {d} exceed the basis budget of {budget}")
    space = _WordSpace(letters, d)
    N = len(space)
    # Echelon columns run from the longest word down, so pivots are the
    # largest words and the surviving representatives are the smallest ones.
    col = lambda i: N - 1 - i  # noqa: E731
    ech = Echelon(fld, N)
    frontier = []

    def push(vec: dict):
        row = ech.add({col(i): a for i, a in vec.items()})
        if row is not None:
            frontier.append({N - 1 - c: a for c, a in row.items()})

    for psi in variety.polys:
        vals = _expand(psi, N, space.mul, space.weights, d)
        if fld.is_finite:
            vals = _reduce_exponents(vals, fld)
        for vec in vals.values():
            push(vec)
    for r in relations:
        push(space.poly_vector(r))

    # ideal closure: multiply every new vector by every word that keeps it in range
    by_len = {}
    for i, w in enumerate(space.words):
        by_len.setdefault(w.length, []).append(i)
    while frontier:
        vec = frontier.pop()
        low = min(space.weights[i] for i in vec)
        for L in range(1, d - low + 1):
            for u in by_len.get(L, ()):
                push(_sparse_mul(fld, space.mul, {u: fld.one}, vec))
                push(_sparse_mul(fld, space.mul, vec, {u: fld.one}))

    pivots = {N - 1 - c for c in ech.rows}
    reps = [i for i in range(N) if i not in pivots]
    pos = {i: k for k, i in enumerate(reps)}
    m = len(reps)

    def normal_form(i: int) -> tuple:
        red = ech.reduce({col(i): fld.one})
        out = [fld.zero] * m
        for c, a in red.items():
            out[pos[N - 1 - c]] = a
        return tuple(out)

    images = {w: normal_form(i) for i, w in enumerate(space.words)}
    table = {}
    for x, i in enumerate(reps):
        for y, j in enumerate(reps):
            prod = space.mul(i, j)
            if prod:
                v = images[space.words[prod[0][0]]]
                if any(v):
                    table[(x, y)] = v
    names = [print_word(space.words[i]) for i in reps]
    carrier = FdAlgebra(fld, names, table)
    rel_deg = {k: 0 for k in range(1, d + 1)}
    for i in pivots:
        rel_deg[space.weights[i]] += 1
    return TruncatedFreeAlgebra(
        variety, letters, d, carrier, images, tuple(space.words[i] for i in reps), rel_deg, space, ech
    )


def _word_count(s: int, n: int) -> int:
    from .words import catalan

    return catalan(n - 1) * s**n


def identity_implied(variety: IdentitySet, poly: Poly, d: int, letters=None, budget: int = DEFAULT_WORD_BUDGET) -> bool:
    """Whether ``poly`` holds in every algebra of ``variety`` that is nilpotent of class d.

    Equivalently ``poly`` lies in the T-ideal of ``variety`` computed up to
    degree ``d``.  Consequences that only appear above degree d are missed.
    """
    if poly.field != variety.field:
        poly = poly.with_field(variety.field)
    if d < poly.total_degree():
        raise DegreeTooSmall(f"degree {d} is below the degree {poly.total_degree()} of {poly}")
    letters = _letter_names(letters) if letters is not None else tuple(poly.variables())
    missing = set(poly.variables()) - set(letters)
    if missing:
        raise ValueError(f"letters {sorted(missing)} of {poly} are not free generators")
    if not letters:
        return True
    return truncated_free(variety, letters, d, budget).contains(poly)


@dataclass
class ComponentCheck:
    identity: Poly
    type: TypeVector
    component: Poly
    implied: bool


def homogeneous_closure_check(variety: IdentitySet, d: int, budget: int = DEFAULT_WORD_BUDGET) -> list:
    """Check that each homogeneous component of each identity is implied at degree ``d``.

    Over Q this never fails.  One truncated free algebra on the union of all
    variables serves every component.
    """
    if variety.field.is_finite:
        raise FieldMismatch("component checks need an infinite field; use Q")
    top = variety.max_degree()
    if d < top:
        raise DegreeTooSmall(f"degree {d} is below the identity degree {top}")
    letters = sorted({v for p in variety.polys for v in p.variables()}, key=letter_key)
    free = truncated_free(variety, letters, d, budget) if letters else None
    out = []
    for p in variety.polys:
        for t, comp in homogeneous_components(p).items():
            out.append(ComponentCheck(p, t, comp, free.contains(comp)))
    return out


# -- coproducts and B-flat-X -------------------------------------------------------------------


def _block_letters(algebras: Sequence[FdAlgebra]) -> list:
    """Letters for the basis elements of each algebra, renamed when names clash."""
    names = [n for a in algebras for n in a.basis_names]
    if len(set(names)) == len(names):
        return [list(a.basis_names) for a in algebras]
    return [[f"{chr(ord('a') + k)}{i + 1}" for i in range(a.dim)] for k, a in enumerate(algebras)]


def _structure_relations(a: FdAlgebra, letters: Sequence[str]) -> list:
    """e_i e_j - (e_i e_j)_A as polynomials in the letters."""
    out = []
    for i in range(a.dim):
        for j in range(a.dim):
            terms = {Node(Leaf(letters[i]), Leaf(letters[j])): a.field.one}
            for k, c in a.product_entries(i, j):
                terms[Leaf(letters[k])] = a.field.neg(c)
            out.append(Poly(a.field, terms))
    return out


@dataclass
class CoproductResult:
    algebra: FdAlgebra
    injections: tuple
    free: TruncatedFreeAlgebra
    letters: tuple  # per factor

    def __iter__(self):
        return iter((self.algebra,) + tuple(self.injections))


def _truncated_sum(algebras: Sequence[FdAlgebra], variety: IdentitySet, d: int, letters=None, budget=DEFAULT_WORD_BUDGET) -> CoproductResult:
    fld = variety.field
    for a in algebras:
        if a.field != fld:
            raise FieldMismatch(f"algebra over {a.field}, variety over {fld}")
    letters = letters or _block_letters(algebras)
    rels = [r for a, ls in zip(algebras, letters) for r in _structure_relations(a, ls)]
    free = truncated_free(variety, [s for ls in letters for s in ls], d, budget, rels)
    injections = []
    for a, ls in zip(algebras, letters):
        cols = [free.word_images[Leaf(s)] for s in ls]
        m = Matrix.from_columns(fld, cols, free.dim)
        injections.append(make_morphism(a, free.carrier, m))
    return CoproductResult(free.carrier, tuple(injections), free, tuple(tuple(ls) for ls in letters))


def truncated_coproduct(a: FdAlgebra, c: FdAlgebra, variety: IdentitySet, d: int, budget: int = DEFAULT_WORD_BUDGET) -> CoproductResult:
    """Coproduct of ``a`` and ``c`` in ``variety``, cut off above degree ``d``.

    The free algebra on the two bases modulo the identities and the relations
    e_i e_j = (e_i e_j)_A and likewise for C.  Only summands that are
    nilpotent of class <= d embed faithfully: an element such as an
    idempotent equals products of every length and so falls into the
    truncated part.
    """
    return _truncated_sum([a, c], variety, d, budget=budget)


def _retraction(coprod: CoproductResult, b: FdAlgebra, factor: int = 0) -> Morphism:
    """(B + ...)_d -> B: B's letters to themselves, every other letter to 0."""
    fld = b.field
    own = {s: k for k, s in enumerate(coprod.letters[factor])}
    assignment = {s: b.basis(k) for s, k in own.items()}
    cols = []
    for w in coprod.free.representatives:
        if set(w.letters()) <= own.keys():
            cols.append(substitute(Poly.word(w, fld), b, assignment))
        else:
            cols.append(b.zero())
    m = Matrix.from_columns(fld, cols, b.dim)
    try:
        return make_morphism(coprod.algebra, b, m)
    except NotMultiplicative as e:
        raise NotMultiplicative(
            e.i, e.j, e.lhs, e.rhs,
            f"no retraction onto B at degree {coprod.free.max_degree}: B must lie in the variety and be nilpotent of that class",
        ) from None


def flat(b: FdAlgebra, x: FdAlgebra, variety: IdentitySet, d: int, budget: int = DEFAULT_WORD_BUDGET):
    """B♭X: kernel of the retraction (B + X)_d -> B, with its inclusion."""
    coprod = truncated_coproduct(b, x, variety, d, budget)
    return kernel(_retraction(coprod, b))


@dataclass
class CoherenceReport:
    coherent: bool
    flat_dim: int  # dim of B♭(X+Y)
    generated_dim: int  # dim of the subalgebra generated by both images
    missing: tuple = dc_field(repr=False)  # basis vectors of B♭(X+Y) outside the generated subalgebra
    coproduct: FdAlgebra | None = dc_field(default=None, repr=False)

    def __bool__(self):
        return self.coherent


def coherence_probe(b: FdAlgebra, x: FdAlgebra, y: FdAlgebra, variety: IdentitySet, d: int, budget: int = DEFAULT_WORD_BUDGET) -> CoherenceReport:
    """Compare B♭(X+Y) with the subalgebra generated by the images of B♭X and B♭Y.

    The comparison map out of B♭X + B♭Y is onto iff the generated subalgebra
    is everything.  All three coproducts use the same letters, so the maps
    (B+X)_d -> (B+X+Y)_d send each word to its class.
    """
    letters = _block_letters([b, x, y])
    big = _truncated_sum([b, x, y], variety, d, letters, budget)
    target = _retraction(big, b).kernel_subspace
    images = []
    for other, ls in ((x, letters[1]), (y, letters[2])):
        small = _truncated_sum([b, other], variety, d, [letters[0], ls], budget)
        sub = _retraction(small, b).kernel_subspace
        reps = small.free.representatives
        for v in sub.basis:
            images.append(big.free.class_of(Poly(variety.field, {w: a for w, a in zip(reps, v) if a})))
    gen = generated_subalgebra(big.algebra, images)
    missing = tuple(v for v in target.basis if not gen.member(v))
    return CoherenceReport(gen == target, target.dim, gen.dim, missing, big.algebra)


# -- Orzech equations ------------------------------------------------------------------------

_ORZECH_SLOTS = ("y(zx)", "x(yz)", "y(xz)", "x(zy)", "(zx)y", "(yz)x", "(xz)y", "(zy)x")


def orzech_polys(lambdas: Sequence, field: Field = QQ) -> tuple:
    """The two degree-3 equations as polynomials (left side minus right side).

    The first has left side z(xy) and uses lambdas 1-8, the second has left
    side (xy)z and uses lambdas 9-16, both on the slots
    y(zx), x(yz), y(xz), x(zy), (zx)y, (yz)x, (xz)y, (zy)x.
    """
    lam = [field(c) for c in lambdas]
    if len(lam) != 16:
        raise ValueError(f"expected 16 coefficients, got {len(lam)}")
    out = []
    for lhs, chunk in (("z(xy)", lam[:8]), ("(xy)z", lam[8:])):
        p = parse_poly(lhs, field)
        for c, slot in zip(chunk, _ORZECH_SLOTS):
            if c:
                p = p - parse_poly(slot, field).scale(c)
        out.append(p)
    return tuple(out)


def orzech_check(variety: IdentitySet, lambdas: Sequence, d: int = 3, equations: Sequence[int] = (1, 2), budget: int = DEFAULT_WORD_BUDGET) -> dict:
    """``{equation number: implied at degree d}`` for the selected equations."""
    if d < 3:
        raise DegreeTooSmall("the equations have degree 3")
    polys = orzech_polys(lambdas, variety.field)
    return {k: identity_implied(variety, polys[k - 1], d, ("x", "y", "z"), budget) for k in equations}
