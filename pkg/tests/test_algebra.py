import itertools
import random

import pytest

from _support import (
    all_morphisms_brute,
    is_ideal_set,
    mul_modp,
    random_algebra,
    random_invertible,
    scrambled_split_diagram,
    span_set,
    subspace_set,
    transport,
    vectors,
)
from nonassoc import (
    GF,
    QQ,
    DiagramInvalid,
    DimensionMismatch,
    FdAlgebra,
    FieldMismatch,
    Matrix,
    NotAnIdeal,
    NotAssociative,
    NotComposable,
    NotMultiplicative,
    abelian_algebra,
    coequalizer,
    cokernel,
    commutator_algebra,
    derivation_matrices,
    derivations,
    enumerate_morphisms,
    generated_ideal,
    generated_subalgebra,
    identity_morphism,
    ideal_square_is_ideal,
    image_factorization,
    is_associative,
    is_exact,
    is_ideal,
    is_subalgebra,
    kernel,
    make_morphism,
    matrix_units,
    product,
    pullback,
    quotient,
    span,
    split_short_five_check,
    subalgebra,
    truncated_polynomial_algebra,
    zero_algebra,
    zero_morphism,
)


def test_construction_validates_input():
    with pytest.raises(ValueError):
        FdAlgebra(QQ, ["a", "a"])
    with pytest.raises(DimensionMismatch):
        FdAlgebra(QQ, ["a"], {(0, 1): [1]})
    with pytest.raises(DimensionMismatch):
        FdAlgebra(QQ, ["a"], {(0, 0): [1, 2]})


def test_multiplication_is_bilinear():
    rng = random.Random(0)
    a = random_algebra(rng, GF(3), 3, density=0.8)
    for u, v in itertools.product(vectors(3, 3)[::5], vectors(3, 3)[::7]):
        assert a.mul(u, v) == mul_modp(a, u, v)


def test_make_morphism_rejects_non_multiplicative_maps():
    a = truncated_polynomial_algebra(QQ, 3)
    with pytest.raises(NotMultiplicative):
        make_morphism(a, a, Matrix.identity(QQ, 3) + Matrix.identity(QQ, 3))
    with pytest.raises(FieldMismatch):
        make_morphism(a, truncated_polynomial_algebra(GF(2), 3), [[1, 0, 0]] * 3)


@pytest.mark.parametrize("seed", range(12))
def test_enumerated_morphisms_match_brute_force(seed):
    rng = random.Random(seed)
    f = GF(rng.choice([2, 3]))
    a = random_algebra(rng, f, rng.randint(1, 2), density=0.4)
    b = random_algebra(rng, f, rng.randint(1, 2), density=0.4)
    ours = sorted(tuple(m.matrix.columns()) for m in enumerate_morphisms(a, b))
    assert ours == sorted(all_morphisms_brute(a, b))


def test_composition():
    a = truncated_polynomial_algebra(GF(2), 3)
    i = identity_morphism(a)
    assert (i @ i) == i
    with pytest.raises(NotComposable):
        zero_morphism(a, zero_algebra(GF(2))) @ zero_morphism(a, zero_algebra(GF(2)))


@pytest.mark.parametrize("seed", range(20))
def test_first_isomorphism_theorem_dimensions(seed):
    rng = random.Random(seed)
    f = GF(2)
    a = random_algebra(rng, f, 3, density=0.3)
    b = random_algebra(rng, f, 2, density=0.3)
    for m in itertools.islice(enumerate_morphisms(a, b), 5):
        k, incl = kernel(m)
        assert is_ideal(a, m.kernel_subspace)
        assert is_subalgebra(b, m.image_subspace)
        q, proj = quotient(a, m.kernel_subspace)
        assert q.dim == m.image_subspace.dim
        p, mono = image_factorization(m)
        assert (mono @ p) == m and p.surjective and mono.injective


def test_quotient_by_non_ideal_raises():
    a = truncated_polynomial_algebra(QQ, 4)
    with pytest.raises(NotAnIdeal):
        quotient(a, span([a.element({"x2": 1})], 4, QQ))


def test_quotient_kills_exactly_the_ideal():
    a = truncated_polynomial_algebra(QQ, 4)
    ideal = span([a.element({"x3": 1}), a.element({"x4": 1})], 4, QQ)
    q, proj = quotient(a, ideal)
    assert q.basis_names == ("x", "x2")
    assert q.format_element(q.mul(q.basis(0), q.basis(0))) == "x2"
    assert proj.kernel_subspace == ideal


def test_cokernel_and_coequalizer_universal_equations():
    rng = random.Random(3)
    f = GF(2)
    a = random_algebra(rng, f, 2, density=0.5)
    b = random_algebra(rng, f, 2, density=0.5)
    maps = list(enumerate_morphisms(a, b))
    for m, n in itertools.product(maps, repeat=2):
        q, proj = coequalizer(m, n)
        assert (proj @ m) == (proj @ n)
    for m in maps:
        c, proj = cokernel(m)
        assert (proj @ m).is_zero


def test_product_and_pullback_by_counting():
    rng = random.Random(4)
    fld = GF(2)
    for _ in range(20):
        a = random_algebra(rng, fld, 2, density=0.3)
        c = random_algebra(rng, fld, 1, density=0.3)
        b = random_algebra(rng, fld, 2, density=0.3)
        fs, gs = list(enumerate_morphisms(a, b)), list(enumerate_morphisms(c, b))
        f, g = rng.choice(fs), rng.choice(gs)
        res = pullback(f, g)
        pairs = [(x, y) for x in vectors(2, 2) for y in vectors(2, 1) if f(x) == g(y)]
        assert 2 ** res.P.dim == len(pairs)
        assert (f @ res.pi_a) == (g @ res.pi_c)
        med = res.pair(res.pi_a, res.pi_c)
        assert med == identity_morphism(res.P)
    p, pa, pc = product(a, c)
    assert p.dim == 3 and pa.surjective and pc.surjective


def test_exactness_report():
    a = truncated_polynomial_algebra(QQ, 4)
    ideal = span([a.element({"x3": 1}), a.element({"x4": 1})], 4, QQ)
    _, incl = subalgebra(a, ideal)
    _, proj = quotient(a, ideal)
    rep = is_exact([incl, proj])
    assert rep.exact and rep.short_exact
    assert not is_exact([incl, identity_morphism(a)]).exact


def test_split_five_rejects_inconsistent_diagrams():
    rng = random.Random(5)
    d = scrambled_split_diagram(rng, GF(3), 1, 1)
    broken = dict(d)
    del broken["t"]
    with pytest.raises(DiagramInvalid):
        split_short_five_check(broken)
    swapped = dict(d, s=d["f"])
    with pytest.raises(DiagramInvalid):
        split_short_five_check(swapped)


def test_split_five_needs_alpha_to_be_iso():
    # A -> A+C -> C over a zero bottom-left corner; beta = g is not an iso
    fld = QQ
    a, b, c = abelian_algebra(fld, 1), abelian_algebra(fld, 2), abelian_algebra(fld, 1)
    f = make_morphism(a, b, [[1], [0]])
    g = make_morphism(b, c, [[0, 1]])
    s = make_morphism(c, b, [[0], [1]])
    z = zero_algebra(fld)
    k = zero_morphism(z, c)
    diagram = {
        "f": f, "g": g, "s": s,
        "k": k, "q": identity_morphism(c), "t": identity_morphism(c),
        "alpha": zero_morphism(a, z), "beta": g, "gamma": identity_morphism(c),
    }
    assert split_short_five_check(diagram) is False


def test_derivations_match_brute_force_over_gf2():
    rng = random.Random(6)
    for _ in range(15):
        a = random_algebra(rng, GF(2), 2, density=0.5)
        brute = 0
        for entries in itertools.product(range(2), repeat=4):
            m = Matrix.from_rows(GF(2), [entries[:2], entries[2:]])
            if all(
                m.apply(a.mul(u, v)) == tuple((x + y) % 2 for x, y in zip(a.mul(m.apply(u), v), a.mul(u, m.apply(v))))
                for u in a.basis_vectors()
                for v in a.basis_vectors()
            ):
                brute += 1
        assert 2 ** len(derivation_matrices(a)) == brute


def test_derivation_dimension_is_invariant_under_isomorphism():
    rng = random.Random(7)
    for _ in range(10):
        a = random_algebra(rng, QQ, 3, density=0.4)
        b, _ = transport(a, random_invertible(rng, QQ, 3))
        assert derivations(a).dim == derivations(b).dim


def test_derivation_algebra_of_matrix_units():
    # inner derivations of M2 are sl2-sized: dim 3
    assert derivations(matrix_units(QQ, 2)).dim == 3


def test_commutator_needs_associativity():
    assert is_associative(matrix_units(QQ, 2)) is None
    z = FdAlgebra(QQ, ["x", "y"], {(0, 0): [0, 1], (1, 0): [1, 0]})
    assert is_associative(z) is not None
    with pytest.raises(NotAssociative):
        commutator_algebra(z)


def test_ideal_square_can_fail_to_be_an_ideal():
    rng = random.Random(8)
    outcomes = set()
    for _ in range(300):
        a = random_algebra(rng, GF(2), 3, density=0.4)
        gens = [tuple(rng.randrange(2) for _ in range(3))]
        ideal = generated_ideal(a, gens)
        ours = ideal_square_is_ideal(a, ideal)
        sq = span_set(2, 3, [a.mul(u, v) for u in ideal.basis for v in ideal.basis])
        assert ours == is_ideal_set(a, sq)
        outcomes.add(ours)
    assert outcomes == {True, False}


def test_generated_subalgebra_is_closed():
    rng = random.Random(9)
    for _ in range(30):
        a = random_algebra(rng, GF(2), 3, density=0.4)
        s = generated_subalgebra(a, [tuple(rng.randrange(2) for _ in range(3))])
        elems = subspace_set(s)
        assert all(mul_modp(a, u, v) in elems for u in elems for v in elems)
