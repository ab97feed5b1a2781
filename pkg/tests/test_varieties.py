import itertools
import random
import warnings

import pytest

from _support import FreeOracle, all_morphisms_brute, random_algebra
from nonassoc import (
    GF,
    QQ,
    BudgetExceeded,
    DegreeTooSmall,
    FdAlgebra,
    FieldMismatch,
    IdentitySet,
    ModeUnsoundWarning,
    Poly,
    abelian_algebra,
    check_identity,
    check_variety,
    coherence_probe,
    enumerate_morphisms,
    enumerate_words,
    flat,
    identity_ideal,
    identity_implied,
    make_morphism,
    orzech_check,
    orzech_polys,
    parse_poly,
    preset,
    reflect,
    relation_subspace,
    substitute,
    truncated_coproduct,
    truncated_free,
)


def _random_poly(rng, field, letters=("x", "y"), d=3):
    words = enumerate_words(letters, d)
    p = field.characteristic or 5
    while True:
        poly = Poly(field, {rng.choice(words): rng.randrange(1, p) for _ in range(rng.randint(1, 3))})
        if poly:
            return poly


# -- identity checks ------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(40))
def test_exhaustive_and_reduced_agree_over_gf_p(seed):
    rng = random.Random(seed)
    fld = GF(rng.choice([2, 3]))
    a = random_algebra(rng, fld, rng.randint(1, 2), density=0.6)
    p = _random_poly(rng, fld)
    ex = check_identity(a, p, "exhaustive")
    red = check_identity(a, p, "reduced")
    assert ex.holds == red.holds
    for rep in (ex, red):
        if not rep.holds:
            assert any(rep.value) and substitute(p, a, rep.witness) == rep.value
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ModeUnsoundWarning)
        sym = check_identity(a, p, "symbolic")
    # a vanishing formal expansion is always sound; a nonzero one is inconclusive
    assert sym.holds in (True, None)
    if sym.holds:
        assert ex.holds


def test_symbolic_mode_is_inconclusive_for_polynomial_functions_that_vanish():
    # e*e = e over GF(2): xx - x is zero as a function, not as a polynomial in t
    a = FdAlgebra(GF(2), ["e"], {(0, 0): [1]})
    p = parse_poly("xx - x", GF(2))
    with pytest.warns(ModeUnsoundWarning):
        rep = check_identity(a, p, "symbolic")
    assert rep.holds is None and rep.status.startswith("inconclusive")
    assert check_identity(a, p).holds is True
    assert check_identity(a, p, "reduced").holds is True


@pytest.mark.parametrize("seed", range(30))
def test_symbolic_over_q_agrees_with_random_points(seed):
    rng = random.Random(seed)
    a = random_algebra(rng, QQ, rng.randint(1, 3), density=0.5)
    p = _random_poly(rng, QQ, ("x", "y", "z"))
    rep = check_identity(a, p)
    points = [{v: tuple(rng.randint(-9, 9) for _ in range(a.dim)) for v in "xyz"} for _ in range(20)]
    sampled = all(not any(substitute(p, a, pt)) for pt in points)
    assert rep.holds == sampled
    if not rep.holds:
        assert any(rep.value) and substitute(p, a, rep.witness) == rep.value


def test_exhaustive_budget():
    a = random_algebra(random.Random(0), GF(3), 3)
    with pytest.raises(BudgetExceeded):
        check_identity(a, parse_poly("x(yz)", GF(3)), "exhaustive", budget=100)


def test_known_varieties():
    m2 = preset("assoc")
    bracket_free = abelian_algebra(QQ, 2)
    assert all(r.holds for r in check_variety(bracket_free, m2))
    trunc = FdAlgebra(QQ, ["x", "y"], {(0, 0): [0, 1]})
    assert [r.holds for r in check_variety(trunc, preset("comm"))] == [True]
    assert [r.holds for r in check_variety(trunc, preset("alternating"))] == [False]


def test_identity_sets():
    v = IdentitySet.from_strings("mine", ["xy - yx", "x(yz)"])
    assert v.max_degree() == 3 and len(v) == 2
    assert preset("anticomm").over(GF(2)).polys == preset("comm", GF(2)).polys
    with pytest.raises(KeyError):
        preset("nonsense")
    with pytest.raises(FieldMismatch):
        IdentitySet("bad", QQ, (parse_poly("xy", GF(2)),))


# -- reflection -----------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_reflection_is_universal_by_enumeration(seed):
    rng = random.Random(seed)
    fld = GF(2)
    comm = preset("comm", fld)
    a = random_algebra(rng, fld, 2, density=0.6)
    la, eta = reflect(a, comm)
    assert all(r.holds for r in check_variety(la, comm))
    targets = [random_algebra(rng, fld, 2, density=0.6) for _ in range(6)]
    targets = [b for b in targets if all(r.holds for r in check_variety(b, comm))]
    for b in targets:
        for cols in all_morphisms_brute(a, b):
            # every map into the variety kills I(A), so it factors through eta
            f = make_morphism(a, b, [list(r) for r in zip(*cols)] if cols else [])
            assert all(not any(f(v)) for v in eta.kernel_subspace.basis)


def test_identity_ideal_modes_agree():
    rng = random.Random(11)
    for _ in range(20):
        a = random_algebra(rng, GF(3), 2, density=0.6)
        v = preset("lie", GF(3))
        assert relation_subspace(a, v) == relation_subspace(a, v, "reduced")
        assert identity_ideal(a, v) == identity_ideal(a, v, "reduced")
    with pytest.raises(FieldMismatch):
        relation_subspace(a, v, "symbolic")


# -- free algebras --------------------------------------------------------------------


def _m(o, u, v):
    return o.mul(u, v)


def test_free_dimensions_by_degree():
    assert truncated_free(preset("alg"), ["x", "y"], 3).dims_by_degree() == {1: 2, 2: 4, 3: 16}
    assert truncated_free(preset("assoc"), ["x", "y"], 3).dims_by_degree() == {1: 2, 2: 4, 3: 8}
    # Wedderburn-Etherington numbers for one commutative generator
    assert truncated_free(preset("comm"), ["x"], 5).dims_by_degree() == {1: 1, 2: 1, 3: 1, 4: 2, 5: 3}


def test_free_dimensions_against_oracle():
    rng = random.Random(12)
    assoc = [(3, lambda o, u, v, w: o.add(_m(o, _m(o, u, v), w), _m(o, u, _m(o, v, w)), coeffs=[1, -1]))]
    assert truncated_free(preset("assoc"), ["x", "y"], 3).dim == FreeOracle(["x", "y"], 3).quotient_dim(assoc, rng)
    comm = [(2, lambda o, u, v: o.add(_m(o, u, v), _m(o, v, u), coeffs=[1, -1]))]
    assert truncated_free(preset("comm"), ["x"], 4).dim == FreeOracle(["x"], 4).quotient_dim(comm, rng)
    alt = [(2, lambda o, u, v: o.add(_m(o, _m(o, u, u), v), _m(o, u, _m(o, u, v)), coeffs=[1, -1]))]
    ours = truncated_free(IdentitySet.from_strings("left-alt", ["(xx)y - x(xy)"]), ["x", "y"], 3).dim
    assert ours == FreeOracle(["x", "y"], 3).quotient_dim(alt, rng)


def test_free_algebra_over_gf2_separates_alternating_and_anticommutative():
    assert truncated_free(preset("anticomm", GF(2)), ["x"], 2).dim == 2
    assert truncated_free(preset("alternating", GF(2)), ["x"], 2).dim == 1
    assert truncated_free(preset("anticomm", QQ), ["x"], 2).dim == 1


def test_free_algebra_classes():
    free = truncated_free(preset("comm"), ["x", "y"], 2)
    assert free.contains(parse_poly("xy - yx"))
    assert not free.contains(parse_poly("xy"))
    assert free.class_of(parse_poly("x(xy)")) == free.carrier.zero()
    with pytest.raises(ValueError):
        free.class_of(parse_poly("z"))


def test_implied_needs_enough_degree():
    with pytest.raises(DegreeTooSmall):
        identity_implied(preset("assoc"), parse_poly("x(yz)"), 2)


def test_lie_implies_anticommutativity_but_not_conversely_in_char_2():
    assert identity_implied(preset("lie", GF(2)), parse_poly("xy + yx", GF(2)), 2)
    assert not identity_implied(preset("qlie", GF(2)), parse_poly("xx", GF(2)), 3)


# -- coproducts and coherence ------------------------------------------------------------


def test_coproduct_of_abelian_algebras_keeps_only_cross_products():
    rng = random.Random(13)
    a = random_algebra(rng, QQ, 2, density=0.0, names=["a1", "a2"])
    c = random_algebra(rng, QQ, 1, density=0.0, names=["c1"])
    res = truncated_coproduct(a, c, preset("comm"), 2)
    # products inside each abelian summand vanish; a_i c_1 = c_1 a_i survive
    assert res.algebra.dim == 5
    assert sorted(res.algebra.basis_names) == ["a1", "a1c1", "a2", "a2c1", "c1"]
    ia, ic = res.injections
    assert ia.injective and ic.injective


def test_coproduct_respects_structure_of_the_summands():
    a = FdAlgebra(QQ, ["u", "w"], {(0, 0): [0, 1]})
    b = abelian_algebra(QQ, 1, ["v"])
    res = truncated_coproduct(a, b, preset("assoc"), 3)
    ia, _ = res.injections
    assert ia.injective
    u, w = ia(a.basis(0)), ia(a.basis(1))
    assert res.algebra.mul(u, u) == w


def test_coproduct_truncation_swallows_idempotents():
    a = FdAlgebra(QQ, ["u"], {(0, 0): [1]})
    res = truncated_coproduct(a, abelian_algebra(QQ, 1, ["v"]), preset("assoc"), 3)
    assert res.injections[0].is_zero


def test_flat_is_kernel_of_retraction():
    b, x = abelian_algebra(QQ, 1, ["b"]), abelian_algebra(QQ, 1, ["x"])
    for name, d in (("alg", 2), ("alg", 3), ("assoc", 3), ("comm", 3)):
        res = truncated_coproduct(b, x, preset(name), d)
        k, incl = flat(b, x, preset(name), d)
        assert k.dim == res.algebra.dim - 1
        assert incl.injective


def test_coherence_report_lists_missing_words():
    b, x, y = (abelian_algebra(QQ, 1, [n]) for n in "bxy")
    rep = coherence_probe(b, x, y, preset("alg"), 3)
    assert not rep.coherent and rep.flat_dim - rep.generated_dim == 4
    assert sorted(rep.coproduct.format_element(m) for m in rep.missing) == sorted(["b(xy)", "b(yx)", "(xy)b", "(yx)b"])
    assert coherence_probe(b, x, y, preset("comm"), 3).coherent is False
    assert coherence_probe(b, x, y, preset("alg"), 2).coherent is True


def test_orzech_polys_layout():
    lam = [0] * 16
    lam[0] = 1
    lam[12] = 2
    p1, p2 = orzech_polys(lam)
    assert p1 == parse_poly("z(xy) - y(zx)")
    assert p2 == parse_poly("(xy)z - 2 (zx)y")
    with pytest.raises(ValueError):
        orzech_polys([0] * 15)


def test_orzech_second_equation_for_qlie():
    base = [-1, -1] + [0] * 14
    assert orzech_check(preset("qlie"), base) == {1: True, 2: False}
    full = base[:8] + [1, 1] + [0] * 6
    p2 = orzech_polys(full)[1]
    assert p2 == parse_poly("(xy)z - y(zx) - x(yz)")
    assert orzech_check(preset("qlie"), full) == {1: True, 2: True}


def _witt(n, k):
    """Dimension of the degree-n part of the free Lie algebra on k generators (necklace formula)."""
    def mobius(m):
        out, q = 1, 2
        while q * q <= m:
            if m % q == 0:
                m //= q
                if m % q == 0:
                    return 0
                out = -out
            q += 1
        return -out if m > 1 else out

    return sum(mobius(n // e) * k**e for e in range(1, n + 1) if n % e == 0) // n


@pytest.mark.parametrize("k,d", [(2, 3), (2, 4), (3, 3)])
def test_free_lie_dimensions_follow_witt_formula(k, d):
    letters = ["x", "y", "z"][:k]
    dims = truncated_free(preset("lie"), letters, d).dims_by_degree()
    assert dims == {n: _witt(n, k) for n in range(1, d + 1)}


@pytest.mark.parametrize("name", ["alg", "comm", "assoc", "lie"])
def test_coproduct_is_symmetric_in_its_factors(name):
    a = FdAlgebra(QQ, ["u", "w"], {(0, 0): [0, 1]})
    c = abelian_algebra(QQ, 1, ["v"])
    ac = truncated_coproduct(a, c, preset(name), 3)
    ca = truncated_coproduct(c, a, preset(name), 3)
    assert ac.algebra.dim == ca.algebra.dim
    assert ac.free.dims_by_degree() == ca.free.dims_by_degree()


@pytest.mark.parametrize("seed", range(6))
def test_coproduct_universal_property_against_nilpotent_targets(seed):
    rng = random.Random(seed)
    fld = GF(2)
    a = abelian_algebra(fld, 1, ["a"])
    c = abelian_algebra(fld, 1, ["c"])
    res = truncated_coproduct(a, c, preset("alg", fld), 2)
    ia, ic = res.injections
    checked = 0
    while checked < 3:
        x = random_algebra(rng, fld, 2, density=0.5)
        cubes = [x.mul(x.mul(u, v), w) for u, v, w in itertools.product(x.basis_vectors(), repeat=3)]
        cubes += [x.mul(u, x.mul(v, w)) for u, v, w in itertools.product(x.basis_vectors(), repeat=3)]
        if any(any(v) for v in cubes):
            continue  # only targets nilpotent of class <= 2
        checked += 1
        maps = list(enumerate_morphisms(res.algebra, x))
        pairs = {((m @ ia).matrix, (m @ ic).matrix) for m in maps}
        # each cocone has exactly one mediating morphism
        na = len(list(enumerate_morphisms(a, x)))
        nc = len(list(enumerate_morphisms(c, x)))
        assert len(maps) == len(pairs) == na * nc
