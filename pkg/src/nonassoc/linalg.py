"""Exact dense linear algebra and the lattice of subspaces.

Vectors are tuples of raw field values (see :mod:`nonassoc.fields`).  Every
:class:`Subspace` keeps its basis in reduced row-echelon form, so two
subspaces are equal exactly when their stored bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, FieldMismatch
from .fields import Field

__all__ = [
    "Matrix",
    "Echelon",
    "Subspace",
    "QuotientData",
    "rref",
    "span",
    "subspace_ops",
    "subspace_sum",
    "subspace_intersect",
    "map_kernel_image",
    "quotient_data",
    "zero_vector",
    "unit_vector",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "vec_lincomb",
    "solve",
]


# -- vectors -----------------------------------------------------------------


def zero_vector(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> tuple:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field, c, u):
    return tuple(field.mul(c, a) for a in u)


def vec_lincomb(field, coeffs, vectors, n):
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] = field.add(out[k], field.mul(c, a))
    return tuple(out)


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatch(f"entries do not form a {self.nrows}x{self.ncols} matrix")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field(a) for a in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        rows = tuple(tuple(field(c[i]) for c in cols) for i in range(nrows))
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, tuple(zero_vector(field, ncols) for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple of all entries."""
        return tuple(a for r in self.rows for a in r)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(self.columns()))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} applied to {self.nrows}x{self.ncols} matrix")
        f = self.field
        nz = [(j, a) for j, a in enumerate(v) if a]
        out = []
        for r in self.rows:
            s = f.zero
            for j, a in nz:
                if r[j]:
                    s = f.add(s, f.mul(r[j], a))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot compose {self.nrows}x{self.ncols} with {other.nrows}x{other.ncols}")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(self.field, cols, self.nrows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, tuple(vec_sub(self.field, a, b) for a, b in zip(self.rows, other.rows)))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, tuple(vec_add(self.field, a, b) for a, b in zip(self.rows, other.rows)))

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def rank(self) -> int:
        return len(rref(self)[1])


# -- incremental echelon form --------------------------------------------------


class Echelon:
    """Fully reduced echelon basis grown one vector at a time.

    Rows are sparse dicts ``{column: value}`` normalised to 1 at their pivot
    (their smallest column), with zeros in every other pivot column.
    """

    __slots__ = ("field", "dim", "rows")

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Return ``vec`` minus its projection onto the pivot columns."""
        f = self.field
        v = dict(vec)
        for q in [c for c in v if c in self.rows]:
            a = v.get(q)
            if not a:
                continue
            for c, b in self.rows[q].items():
                t = f.sub(v.get(c, f.zero), f.mul(a, b))
                if t:
                    v[c] = t
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: dict):
        """Insert ``vec``; return the new normalised row, or None if dependent."""
        f = self.field
        v = self.reduce({c: a for c, a in vec.items() if a})
        if not v:
            return None
        p = min(v)
        s = f.inv(v[p])
        v = {c: f.mul(s, a) for c, a in v.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for c, b in v.items():
                    t = f.sub(row.get(c, f.zero), f.mul(a, b))
                    if t:
                        row[c] = t
                    else:
                        row.pop(c, None)
        self.rows[p] = v
        return dict(v)

    def add_dense(self, vec: Sequence):
        return self.add({i: a for i, a in enumerate(vec) if a})

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list:
        return sorted(self.rows)

    def dense_rows(self) -> list:
        f, n = self.field, self.dim
        out = []
        for p in sorted(self.rows):
            r = [f.zero] * n
            for c, a in self.rows[p].items():
                r[c] = a
            out.append(tuple(r))
        return out

    def subspace(self) -> "Subspace":
        return Subspace(self.field, self.dim, tuple(self.dense_rows()), tuple(sorted(self.rows)))


def _sparse(vec: Sequence) -> dict:
    return {i: a for i, a in enumerate(vec) if a}


def _rref_rows(field: Field, rows: Sequence[Sequence], ncols: int):
    """Canonical non-zero RREF rows and pivots of a list of dense rows."""
    if field.is_finite and rows:
        arr = np.array([[field(a) for a in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
        red, piv = _kernels.rref_modp(arr, field.characteristic)
        k = len(piv)
        return [tuple(int(a) for a in red[i]) for i in range(k)], [int(c) for c in piv]
    ech = Echelon(field, ncols)
    for r in rows:
        ech.add(_sparse([field(a) for a in r]))
    return ech.dense_rows(), ech.pivots()


def rref(m: Matrix):
    """Reduced row-echelon form of ``m`` and its pivot columns.

    The result has the same shape as ``m``; zero rows sit at the bottom.
    """
    rows, piv = _rref_rows(m.field, m.rows, m.ncols)
    pad = [zero_vector(m.field, m.ncols)] * (m.nrows - len(rows))
    return Matrix(m.field, m.nrows, m.ncols, tuple(rows + pad)), tuple(piv)


# -- subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient_dim: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)), tuple(range(n)))

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def _check(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def reduce(self, v: Sequence) -> tuple:
        """``v`` minus its pivot-coordinate part; zero iff ``v`` is a member."""
        self._check(v)
        f = self.field
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            a = out[p]
            if a:
                for c, b in enumerate(row):
                    if b:
                        out[c] = f.sub(out[c], f.mul(a, b))
        return tuple(out)

    def member(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of a member ``v`` in the canonical basis."""
        if not self.member(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        return all(self.member(b) for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)


def span(vectors: Iterable[Sequence], ambient_dim: int, field: Field) -> Subspace:
    """Canonical subspace spanned by ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    rows, piv = _rref_rows(field, vectors, ambient_dim)
    return Subspace(field, ambient_dim, tuple(rows), tuple(piv))


def _same_space(a: Subspace, b: Subspace):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_space(a, b)
    return span(a.basis + b.basis, a.ambient_dim, a.field)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the null space of the stacked bases ``[A; -B]``."""
    _same_space(a, b)
    f, n = a.field, a.ambient_dim
    if not a.dim or not b.dim:
        return Subspace.zero(f, n)
    # columns: basis vectors of a then negated basis vectors of b
    cols = list(a.basis) + [tuple(f.neg(x) for x in v) for v in b.basis]
    m = Matrix.from_columns(f, cols, n)
    kern, _ = map_kernel_image(m)
    vecs = [vec_lincomb(f, k[: a.dim], a.basis, n) for k in kern.basis]
    return span(vecs, n, f)


def subspace_ops(a: Subspace, b, op: str):
    """Dispatch ``sum``, ``intersect``, ``contains`` (a ⊇ b) or ``member`` (b ∈ a)."""
    if op == "sum":
        return subspace_sum(a, b)
    if op == "intersect":
        return subspace_intersect(a, b)
    if op == "contains":
        _same_space(a, b)
        return a.contains(b)
    if op == "member":
        return a.member(b)
    raise ValueError(f"unknown subspace operation {op!r}")


def map_kernel_image(m: Matrix):
    """Null space and column space of ``m`` acting on column vectors."""
    f = m.field
    red, piv = rref(m)
    pivset = set(piv)
    kern = []
    for j in range(m.ncols):
        if j in pivset:
            continue
        v = [f.zero] * m.ncols
        v[j] = f.one
        for r, p in enumerate(piv):
            v[p] = f.neg(red.rows[r][j])
        kern.append(tuple(v))
    kernel = span(kern, m.ncols, f)
    image = span(m.columns(), m.nrows, f)
    return kernel, image


@dataclass(frozen=True)
class QuotientData:
    projection: Matrix
    section: Matrix
    coset_basis: tuple
    representatives: tuple  # ambient coordinates chosen as coset representatives


def quotient_data(ambient_dim: int, sub: Subspace) -> QuotientData:
    """Projection onto, and canonical section from, ``ambient / sub``.

    Cosets are represented on the coordinates that are not pivots of ``sub``.
    """
    if sub.ambient_dim != ambient_dim:
        raise DimensionMismatch(f"subspace lives in dimension {sub.ambient_dim}, not {ambient_dim}")
    f = sub.field
    piv = set(sub.pivots)
    reps = tuple(j for j in range(ambient_dim) if j not in piv)
    # column j of the projection is the reduced e_j restricted to the representatives
    cols = []
    for j in range(ambient_dim):
        r = sub.reduce(unit_vector(f, ambient_dim, j))
        cols.append(tuple(r[k] for k in reps))
    proj = Matrix.from_columns(f, cols, len(reps))
    sec_cols = [unit_vector(f, ambient_dim, k) for k in reps]
    section = Matrix.from_columns(f, sec_cols, ambient_dim)
    return QuotientData(proj, section, tuple(sec_cols), reps)


def solve(m: Matrix, rhs: Sequence):
    """One solution x of ``m x = rhs`` (free variables set to 0), or None."""
    f = m.field
    aug = Matrix(f, m.nrows, m.ncols + 1, tuple(r + (b,) for r, b in zip(m.rows, rhs)))
    red, piv = rref(aug)
    if piv and piv[-1] == m.ncols:
        return None
    x = [f.zero] * m.ncols
    for r, p in enumerate(piv):
        x[p] = red.rows[r][m.ncols]
    return tuple(x)
