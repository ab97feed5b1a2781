"""Finite-dimensional algebras given by structure constants, and morphisms.

Everything here is built from the canonical bases of :mod:`nonassoc.linalg`:
kernels and subalgebras use the RREF basis of their carrier subspace,
quotients use the non-pivot coordinates as coset representatives.  Two runs
on the same input therefore produce literally the same algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DiagramInvalid,
    DimensionMismatch,
    FieldMismatch,
    NotAnIdeal,
    NotAssociative,
    NotComposable,
    NotMultiplicative,
)
from .fields import Field
from .linalg import (
    Echelon,
    Matrix,
    Subspace,
    map_kernel_image,
    quotient_data,
    solve,
    span,
    unit_vector,
    vec_sub,
    zero_vector,
)

__all__ = [
    "FdAlgebra",
    "Morphism",
    "make_morphism",
    "identity_morphism",
    "zero_morphism",
    "zero_algebra",
    "kernel",
    "subalgebra",
    "is_subalgebra",
    "is_ideal",
    "generated_ideal",
    "generated_subalgebra",
    "quotient",
    "cokernel",
    "coequalizer",
    "product",
    "pullback",
    "PullbackResult",
    "image_factorization",
    "is_exact",
    "ExactnessReport",
    "split_short_five_check",
    "abelian_splitting",
    "derivations",
    "derivation_matrices",
    "commutator_algebra",
    "is_associative",
    "ideal_square_is_ideal",
    "enumerate_morphisms",
    "abelian_algebra",
    "truncated_polynomial_algebra",
    "z2_example",
    "matrix_units",
]


class FdAlgebra:
    """A finite-dimensional algebra: basis names plus products of basis pairs.

    ``table`` maps ``(i, j)`` to the coordinate vector of ``e_i e_j``, given
    either densely or as a sparse ``{k: coefficient}`` dict.  Missing pairs
    are zero.
    """

    def __init__(self, field: Field, basis_names: Sequence[str], table: Mapping | None = None):
        self.field = field
        self.basis_names = tuple(basis_names)
        if len(set(self.basis_names)) != len(self.basis_names):
            raise ValueError(f"duplicate basis names in {self.basis_names}")
        n = len(self.basis_names)
        sparse = {}
        for (i, j), vec in (table or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"basis pair ({i}, {j}) out of range for dimension {n}")
            items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
            if not isinstance(vec, Mapping) and len(vec) != n:
                raise DimensionMismatch(f"product vector of length {len(vec)} in dimension {n}")
            entries = tuple(sorted((k, field(a)) for k, a in items if field(a)))
            if entries:
                sparse[(i, j)] = entries
        self._table = sparse
        self._tensor = None
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def __repr__(self):
        return f"FdAlgebra({self.field}, dim={self.dim}, basis={list(self.basis_names)})"

    def __eq__(self, other):
        return (
            isinstance(other, FdAlgebra)
            and self.field == other.field
            and self.basis_names == other.basis_names
            and self._table == other._table
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.basis_names, tuple(sorted(self._table.items()))))
        return self._hash

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def basis_vectors(self) -> list:
        return [self.basis(i) for i in range(self.dim)]

    def element(self, coeffs: Mapping[str, object]) -> tuple:
        """Build an element from ``{basis name: coefficient}``."""
        v = [self.field.zero] * self.dim
        for name, c in coeffs.items():
            v[self.basis_names.index(name)] = self.field(c)
        return tuple(v)

    def product_entries(self, i: int, j: int) -> tuple:
        """Sparse ``((k, c_ij^k), ...)`` for the product of basis elements."""
        return self._table.get((i, j), ())

    def product(self, i: int, j: int) -> tuple:
        v = [self.field.zero] * self.dim
        for k, a in self._table.get((i, j), ()):
            v[k] = a
        return tuple(v)

    @property
    def structure(self) -> dict:
        """Dense product vectors for every basis pair."""
        return {(i, j): self.product(i, j) for i in range(self.dim) for j in range(self.dim)}

    def nonzero_pairs(self):
        return self._table.items()

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        f = self.field
        out = [f.zero] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        table = self._table
        for i, a in nu:
            for j, b in nv:
                entries = table.get((i, j))
                if not entries:
                    continue
                ab = f.mul(a, b)
                for k, c in entries:
                    out[k] = f.add(out[k], f.mul(ab, c))
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self._table

    def structure_tensor(self) -> np.ndarray:
        """``c[i, j, k]`` as an int64 array; finite fields only."""
        if not self.field.is_finite:
            raise FieldMismatch("structure tensor is only available over GF(p)")
        if self._tensor is None:
            t = np.zeros((self.dim,) * 3, dtype=np.int64)
            for (i, j), entries in self._table.items():
                for k, a in entries:
                    t[i, j, k] = a
            self._tensor = t
        return self._tensor

    def renamed(self, names: Sequence[str]) -> "FdAlgebra":
        if len(names) != self.dim:
            raise DimensionMismatch("wrong number of names")
        return FdAlgebra(self.field, names, {k: dict(v) for k, v in self._table.items()})

    def format_element(self, v: Sequence) -> str:
        from .polys import Poly
        from .words import Leaf

        return str(Poly(self.field, {Leaf(n): a for n, a in zip(self.basis_names, v)})) if any(v) else "0"


# -- morphisms -------------------------------------------------------------------


class Morphism:
    """A multiplicative linear map; ``matrix`` is target-dim x source-dim."""

    def __init__(self, source: FdAlgebra, target: FdAlgebra, matrix: Matrix):
        self.source = source
        self.target = target
        self.matrix = matrix
        self._ki = None

    def __repr__(self):
        return f"Morphism({self.source.dim} -> {self.target.dim})"

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composite ``self ∘ other``."""
        if other.target != self.source:
            raise NotComposable(f"cannot compose {other} with {self}")
        return Morphism(other.source, self.target, self.matrix @ other.matrix)

    def _kernel_image(self):
        if self._ki is None:
            self._ki = map_kernel_image(self.matrix)
        return self._ki

    @property
    def kernel_subspace(self) -> Subspace:
        return self._kernel_image()[0]

    @property
    def image_subspace(self) -> Subspace:
        return self._kernel_image()[1]

    @property
    def injective(self) -> bool:
        return self.kernel_subspace.dim == 0

    @property
    def surjective(self) -> bool:
        return self.image_subspace.dim == self.target.dim

    @property
    def is_iso(self) -> bool:
        return self.injective and self.surjective

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def _check_multiplicative(source: FdAlgebra, target: FdAlgebra, matrix: Matrix):
    images = matrix.columns()
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = matrix.apply(source.product(i, j))
            rhs = target.mul(images[i], images[j])
            if lhs != rhs:
                raise NotMultiplicative(
                    i, j, lhs, rhs,
                    f"not multiplicative on ({source.basis_names[i]}, {source.basis_names[j]}): "
                    f"f({source.basis_names[i]}*{source.basis_names[j]}) = {target.format_element(lhs)} but "
                    f"f({source.basis_names[i]})*f({source.basis_names[j]}) = {target.format_element(rhs)}",
                )


def make_morphism(source: FdAlgebra, target: FdAlgebra, matrix) -> Morphism:
    """Validate shape, field and multiplicativity on all basis pairs."""
    if source.field != target.field:
        raise FieldMismatch(f"{source.field} vs {target.field}")
    if not isinstance(matrix, Matrix):
        matrix = Matrix.from_rows(source.field, matrix, source.dim)
    if matrix.field != source.field:
        raise FieldMismatch(f"matrix over {matrix.field}, algebras over {source.field}")
    if matrix.nrows != target.dim or matrix.ncols != source.dim:
        raise DimensionMismatch(
            f"matrix is {matrix.nrows}x{matrix.ncols}, expected {target.dim}x{source.dim}"
        )
    _check_multiplicative(source, target, matrix)
    return Morphism(source, target, matrix)


def _from_images(source: FdAlgebra, target: FdAlgebra, images: Sequence[Sequence], check=True) -> Morphism:
    m = Matrix.from_columns(source.field, [tuple(v) for v in images], target.dim)
    if check:
        return make_morphism(source, target, m)
    return Morphism(source, target, m)


def identity_morphism(a: FdAlgebra) -> Morphism:
    return Morphism(a, a, Matrix.identity(a.field, a.dim))


def zero_morphism(a: FdAlgebra, b: FdAlgebra) -> Morphism:
    return Morphism(a, b, Matrix.zeros(a.field, b.dim, a.dim))


def zero_algebra(field: Field) -> FdAlgebra:
    return FdAlgebra(field, ())


# -- subobjects ------------------------------------------------------------------


def _as_subspace(a: FdAlgebra, s) -> Subspace:
    if isinstance(s, Subspace):
        if s.ambient_dim != a.dim:
            raise DimensionMismatch(f"subspace of dimension {s.ambient_dim} in algebra of dimension {a.dim}")
        return s
    return span(s, a.dim, a.field)


def is_subalgebra(a: FdAlgebra, s) -> bool:
    s = _as_subspace(a, s)
    return all(s.member(a.mul(u, v)) for u in s.basis for v in s.basis)


def is_ideal(a: FdAlgebra, s) -> bool:
    s = _as_subspace(a, s)
    es = a.basis_vectors()
    return all(s.member(a.mul(e, u)) and s.member(a.mul(u, e)) for u in s.basis for e in es)


def _closure(a: FdAlgebra, generators, step) -> Subspace:
    ech = Echelon(a.field, a.dim)
    frontier = []
    for g in generators:
        r = ech.add_dense(g)
        if r is not None:
            frontier.append(r)
    while frontier:
        new = []
        for r in frontier:
            u = tuple(r.get(i, a.field.zero) for i in range(a.dim))
            for w in step(u, ech):
                row = ech.add_dense(w)
                if row is not None:
                    new.append(row)
        frontier = new
    return ech.subspace()


def generated_ideal(a: FdAlgebra, generators: Iterable[Sequence] | Subspace) -> Subspace:
    """Smallest ideal containing ``generators``.

    Iterates I_{n+1} = I_n + A I_n + I_n A, multiplying only the vectors that
    entered at the previous round.
    """
    if isinstance(generators, Subspace):
        generators = generators.basis
    es = a.basis_vectors()

    def step(u, ech):
        for e in es:
            yield a.mul(e, u)
            yield a.mul(u, e)

    return _closure(a, generators, step)


def generated_subalgebra(a: FdAlgebra, generators: Iterable[Sequence] | Subspace) -> Subspace:
    """Smallest subalgebra containing ``generators``."""
    if isinstance(generators, Subspace):
        generators = generators.basis
    seen = []

    def step(u, ech):
        seen.append(u)
        for w in seen:
            yield a.mul(u, w)
            yield a.mul(w, u)

    return _closure(a, generators, step)


def subalgebra(a: FdAlgebra, s, names: Sequence[str] | None = None, prefix: str = "s"):
    """Subalgebra on the canonical basis of ``s`` and its inclusion morphism."""
    s = _as_subspace(a, s)
    names = list(names) if names is not None else [f"{prefix}{i + 1}" for i in range(s.dim)]
    table = {}
    for i, u in enumerate(s.basis):
        for j, v in enumerate(s.basis):
            w = a.mul(u, v)
            if not s.member(w):
                raise NotAnIdeal("subspace is not closed under multiplication")
            if any(w):
                table[(i, j)] = s.coords(w)
    sub = FdAlgebra(a.field, names, table)
    incl = Morphism(sub, a, Matrix.from_columns(a.field, list(s.basis), a.dim))
    return sub, incl


def kernel(f: Morphism, prefix: str = "k"):
    """Kernel algebra on the canonical null-space basis, with its inclusion."""
    return subalgebra(f.source, f.kernel_subspace, prefix=prefix)


def quotient(a: FdAlgebra, ideal, names: Sequence[str] | None = None):
    """Quotient by an ideal, on coset representatives, with the projection."""
    ideal = _as_subspace(a, ideal)
    if not is_ideal(a, ideal):
        raise NotAnIdeal("subspace is not an ideal: the quotient product would not be well defined")
    qd = quotient_data(a.dim, ideal)
    reps = qd.representatives
    names = list(names) if names is not None else [a.basis_names[k] for k in reps]
    table = {}
    for x, i in enumerate(reps):
        for y, j in enumerate(reps):
            w = qd.projection.apply(a.product(i, j))
            if any(w):
                table[(x, y)] = w
    q = FdAlgebra(a.field, names, table)
    return q, Morphism(a, q, qd.projection)


def cokernel(f: Morphism):
    """Quotient of the codomain by the ideal generated by the image."""
    return quotient(f.target, generated_ideal(f.target, f.image_subspace))


def coequalizer(f: Morphism, g: Morphism):
    if f.source != g.source or f.target != g.target:
        raise NotComposable("coequalizer needs a parallel pair")
    diffs = [vec_sub(f.target.field, f(e), g(e)) for e in f.source.basis_vectors()]
    return quotient(f.target, generated_ideal(f.target, diffs))


# -- limits ------------------------------------------------------------------------


def _disjoint_names(a: FdAlgebra, c: FdAlgebra):
    if set(a.basis_names).isdisjoint(c.basis_names):
        return list(a.basis_names), list(c.basis_names)
    return [f"{n}_1" for n in a.basis_names], [f"{n}_2" for n in c.basis_names]


def product(a: FdAlgebra, c: FdAlgebra):
    """Cartesian product with componentwise operations and both projections."""
    if a.field != c.field:
        raise FieldMismatch(f"{a.field} vs {c.field}")
    f = a.field
    na, nc = _disjoint_names(a, c)
    n = a.dim + c.dim
    table = {}
    for (i, j), entries in a.nonzero_pairs():
        table[(i, j)] = {k: v for k, v in entries}
    for (i, j), entries in c.nonzero_pairs():
        table[(a.dim + i, a.dim + j)] = {a.dim + k: v for k, v in entries}
    p = FdAlgebra(f, na + nc, table)
    pa = Matrix(f, a.dim, n, tuple(unit_vector(f, n, i) for i in range(a.dim)))
    pc = Matrix(f, c.dim, n, tuple(unit_vector(f, n, a.dim + i) for i in range(c.dim)))
    return p, Morphism(p, a, pa), Morphism(p, c, pc)


@dataclass
class PullbackResult:
    P: FdAlgebra
    pi_a: Morphism
    pi_c: Morphism
    carrier: Subspace  # P as a subspace of A ⊕ C
    ambient: FdAlgebra = dc_field(repr=False)

    def __iter__(self):
        return iter((self.P, self.pi_a, self.pi_c))

    def pair(self, a: Morphism, c: Morphism) -> Morphism:
        """The mediating morphism ⟨a, c⟩: X → P."""
        if a.source != c.source:
            raise NotComposable("⟨a, c⟩ needs a common domain")
        cols = []
        for e in a.source.basis_vectors():
            v = a(e) + c(e)
            if not self.carrier.member(v):
                raise DiagramInvalid("f∘a and g∘c differ; no mediating morphism")
            cols.append(self.carrier.coords(v))
        return _from_images(a.source, self.P, cols)


def pullback(f: Morphism, g: Morphism) -> PullbackResult:
    """Pairs (a, c) with f(a) = g(c), with the two projections."""
    if f.target != g.target:
        raise NotComposable("pullback needs a common codomain")
    a, c, b = f.source, g.source, f.target
    fld = a.field
    s, pa, pc = product(a, c)
    # columns of [F | -G]
    cols = [f(e) for e in a.basis_vectors()] + [tuple(fld.neg(x) for x in g(e)) for e in c.basis_vectors()]
    carrier = map_kernel_image(Matrix.from_columns(fld, cols, b.dim))[0]
    p, incl = subalgebra(s, carrier, prefix="p")
    return PullbackResult(p, pa @ incl, pc @ incl, carrier, s)


def image_factorization(f: Morphism, prefix: str = "i"):
    """``f = m ∘ p`` with ``p`` onto the image subalgebra and ``m`` its inclusion."""
    img = f.image_subspace
    i_alg, m = subalgebra(f.target, img, prefix=prefix)
    p = Morphism(f.source, i_alg, Matrix.from_columns(f.source.field, [img.coords(f(e)) for e in f.source.basis_vectors()], img.dim))
    return p, m


# -- exactness -----------------------------------------------------------------------


@dataclass
class JointReport:
    index: int
    image_dim: int
    kernel_dim: int
    exact: bool


@dataclass
class ExactnessReport:
    joints: list
    injective_start: bool
    surjective_end: bool

    @property
    def exact(self) -> bool:
        return all(j.exact for j in self.joints)

    @property
    def short_exact(self) -> bool:
        """0 → A → B → C → 0 is exact (two maps only)."""
        return len(self.joints) == 1 and self.exact and self.injective_start and self.surjective_end


def is_exact(seq: Sequence[Morphism]) -> ExactnessReport:
    """Compare image and kernel subspaces at every interior joint."""
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    for i, (f, g) in enumerate(zip(seq, seq[1:])):
        if f.target != g.source:
            raise NotComposable(f"map {i} does not land in the domain of map {i + 1}")
    joints = []
    for i, (f, g) in enumerate(zip(seq, seq[1:])):
        im, ker = f.image_subspace, g.kernel_subspace
        joints.append(JointReport(i, im.dim, ker.dim, im == ker))
    return ExactnessReport(joints, seq[0].injective, seq[-1].surjective)


def split_short_five_check(diagram: Mapping[str, Morphism]) -> bool:
    """Validate a split short five diagram and report whether β is an iso.

    Keys: f: A→B, g: B→C, s: C→B (top row), k: D→E, q: E→F, t: F→E (bottom
    row), alpha: A→D, beta: B→E, gamma: C→F.
    """
    try:
        f, g, s, k, q, t = (diagram[x] for x in "fgskqt")
        alpha, beta, gamma = diagram["alpha"], diagram["beta"], diagram["gamma"]
    except KeyError as e:
        raise DiagramInvalid(f"missing morphism {e.args[0]!r}") from None

    def need(cond, what):
        if not cond:
            raise DiagramInvalid(what)

    need(f.target == g.source == s.target and s.source == g.target, "top row is not composable")
    need(k.target == q.source == t.target and t.source == q.target, "bottom row is not composable")
    need(alpha.source == f.source and alpha.target == k.source, "alpha has the wrong domain or codomain")
    need(beta.source == f.target and beta.target == k.target, "beta has the wrong domain or codomain")
    need(gamma.source == g.target and gamma.target == q.target, "gamma has the wrong domain or codomain")
    need((g @ s).matrix == Matrix.identity(g.target.field, g.target.dim), "g∘s is not the identity")
    need((q @ t).matrix == Matrix.identity(q.target.field, q.target.dim), "q∘t is not the identity")
    need(f.injective and f.image_subspace == g.kernel_subspace, "f is not a kernel of g")
    need(k.injective and k.image_subspace == q.kernel_subspace, "k is not a kernel of q")
    need((beta @ f).matrix == (k @ alpha).matrix, "beta∘f != k∘alpha")
    need((gamma @ g).matrix == (q @ beta).matrix, "gamma∘g != q∘beta")
    need((beta @ s).matrix == (t @ gamma).matrix, "beta∘s != t∘gamma")
    return beta.is_iso


def abelian_splitting(f: Morphism, g: Morphism) -> Morphism:
    """Explicit isomorphism B ≅ A ⊕ C for a short exact sequence of abelian algebras."""
    rep = is_exact([f, g])
    if not rep.short_exact:
        raise DiagramInvalid("not a short exact sequence")
    a, b, c = f.source, f.target, g.target
    if not (a.is_abelian() and b.is_abelian() and c.is_abelian()):
        raise DiagramInvalid("abelian algebras required")
    fld = b.field
    section = [solve(g.matrix, e) for e in c.basis_vectors()]
    p, _, _ = product(a, c)
    cols = []
    for e in b.basis_vectors():
        ge = g(e)
        lifted = g.source.zero()
        for coef, sv in zip(ge, section):
            if coef:
                lifted = tuple(fld.add(x, fld.mul(coef, y)) for x, y in zip(lifted, sv))
        a_part = solve(f.matrix, vec_sub(fld, e, lifted))
        cols.append(a_part + ge)
    iso = _from_images(b, p, cols)
    if not iso.is_iso:
        raise DiagramInvalid("splitting map is not invertible")
    return iso


# -- derivations and brackets ---------------------------------------------------------


def derivation_matrices(a: FdAlgebra) -> list:
    """Basis of Der(A) as n x n matrices (canonical RREF order of the flattening)."""
    n, fld = a.dim, a.field
    # unknown D[k][l] sits at column k*n + l;  D(e_l) = sum_k D[k][l] e_k
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [fld.zero] * (n * n)
                for l, c in a.product_entries(i, j):
                    row[k * n + l] = fld.add(row[k * n + l], c)
                for l in range(n):
                    for kk, c in a.product_entries(l, j):
                        if kk == k:
                            row[l * n + i] = fld.sub(row[l * n + i], c)
                    for kk, c in a.product_entries(i, l):
                        if kk == k:
                            row[l * n + j] = fld.sub(row[l * n + j], c)
                rows.append(tuple(row))
    if not rows:
        return []
    kern, _ = map_kernel_image(Matrix(fld, len(rows), n * n, tuple(rows)))
    return [Matrix(fld, n, n, tuple(tuple(v[k * n:(k + 1) * n]) for k in range(n))) for v in kern.basis]


def derivations(a: FdAlgebra) -> FdAlgebra:
    """Der(A) with the commutator bracket [D, D'] = DD' - D'D."""
    mats = derivation_matrices(a)
    fld = a.field
    flat = [m.entries for m in mats]
    space = span(flat, a.dim * a.dim, fld)
    table = {}
    for i, d1 in enumerate(mats):
        for j, d2 in enumerate(mats):
            br = ((d1 @ d2) - (d2 @ d1)).entries
            if any(br):
                table[(i, j)] = space.coords(br)
    return FdAlgebra(fld, [f"d{i + 1}" for i in range(len(mats))], table)


def is_associative(a: FdAlgebra):
    """First basis triple violating (xy)z = x(yz), or None; complete by trilinearity."""
    es = a.basis_vectors()
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        if a.mul(a.mul(es[i], es[j]), es[k]) != a.mul(es[i], a.mul(es[j], es[k])):
            return (i, j, k)
    return None


def commutator_algebra(a: FdAlgebra) -> FdAlgebra:
    """Same carrier with bracket [x, y] = xy - yx; A must be associative."""
    bad = is_associative(a)
    if bad is not None:
        i, j, k = (a.basis_names[x] for x in bad)
        raise NotAssociative(f"({i}{j}){k} != {i}({j}{k})")
    fld = a.field
    table = {}
    for i in range(a.dim):
        for j in range(a.dim):
            v = vec_sub(fld, a.product(i, j), a.product(j, i))
            if any(v):
                table[(i, j)] = v
    return FdAlgebra(fld, a.basis_names, table)


def ideal_square_is_ideal(a: FdAlgebra, ideal) -> bool:
    """Whether span(I·I) is again an ideal of A."""
    ideal = _as_subspace(a, ideal)
    if not is_ideal(a, ideal):
        raise NotAnIdeal("input subspace is not an ideal")
    sq = span([a.mul(u, v) for u in ideal.basis for v in ideal.basis], a.dim, a.field)
    return is_ideal(a, sq)


def enumerate_morphisms(a: FdAlgebra, b: FdAlgebra):
    """Every algebra morphism A → B; finite fields only, p^(dim A · dim B) candidates."""
    fld = a.field
    if not fld.is_finite:
        raise FieldMismatch("morphisms can only be enumerated over GF(p)")
    els = list(itertools.product(range(fld.characteristic), repeat=b.dim))
    # images of basis vectors are chosen one at a time; prune on pairs already fixed
    images = [None] * a.dim

    def ok(upto):
        for i in range(upto + 1):
            for j in range(upto + 1):
                if i != upto and j != upto:
                    continue
                lhs = [fld.zero] * b.dim
                for k, c in a.product_entries(i, j):
                    if k > upto:
                        return True  # cannot check yet; re-checked at the end
                    lhs = [fld.add(x, fld.mul(c, y)) for x, y in zip(lhs, images[k])]
                if tuple(lhs) != b.mul(images[i], images[j]):
                    return False
        return True

    def rec(i):
        if i == a.dim:
            m = Matrix.from_columns(fld, images, b.dim)
            try:
                _check_multiplicative(a, b, m)
            except NotMultiplicative:
                return
            yield Morphism(a, b, m)
            return
        for v in els:
            images[i] = v
            if ok(i):
                yield from rec(i + 1)
        images[i] = None

    yield from rec(0)


# -- standard examples ------------------------------------------------------------------


def abelian_algebra(field: Field, n: int, names: Sequence[str] | None = None) -> FdAlgebra:
    return FdAlgebra(field, names or [f"e{i + 1}" for i in range(n)])


def truncated_polynomial_algebra(field: Field, d: int, letter: str = "x") -> FdAlgebra:
    """K⟨x⟩ modulo monomials of degree > d; basis x, x2, ..., xd."""
    names = [letter] + [f"{letter}{i}" for i in range(2, d + 1)]
    table = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i + j <= d:
                table[(i - 1, j - 1)] = {i + j - 1: 1}
    return FdAlgebra(field, names, table)


def z2_example() -> FdAlgebra:
    """GF(2)-algebra on {x, y} with xx = y and every other product 0."""
    return FdAlgebra(Field(2), ["x", "y"], {(0, 0): {1: 1}})


def matrix_units(field: Field, n: int) -> FdAlgebra:
    """Full matrix algebra M_n on units e_ij with e_ij e_kl = δ_jk e_il."""
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    table = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            table[(i * n + j, k * n + l)] = {i * n + l: 1}
    return FdAlgebra(field, names, table)
