import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kaehler_lab import QQ, PrimeField, SchemeError, build_scheme, generic_position_check, local_ring
from kaehler_lab.algebra import FiniteAlgebra, upoly_squarefree
from kaehler_lab.groebner import Ideal
from kaehler_lab.poly import affine_ring
from support import GF, brute_hilbert, points_scheme, random_fat_scheme, random_points, scheme_from_fixture


def hf(X, upto):
    return [X.hilbert(i) for i in range(upto + 1)]


def test_single_point():
    X = build_scheme(QQ, 2, components=[{"point": ["1", "0", "0"]}])
    assert X.degree == 1 and X.r_X == 0
    assert [str(g) for g in X.I_X.groebner_basis()] == ["X2", "X1"] or {str(g) for g in X.I_X.groebner_basis()} == {
        "X1",
        "X2",
    }
    assert generic_position_check(X)["is_generic"]


def test_monomial_scheme_from_raw_ideal():
    X = build_scheme(QQ, 2, ideal=["X1^2", "X2^3"])
    assert X.degree == 6 and hf(X, 4) == [1, 3, 5, 6, 6] and X.r_X == 3
    assert not generic_position_check(X)["is_generic"]
    assert X.kappa_total == 1 and X.is_locally_gorenstein and not X.is_reduced


def test_two_cubics():
    X = scheme_from_fixture("twocubics_ci")
    assert X.degree == 9 and hf(X, 5) == [1, 3, 6, 8, 9, 9] and X.r_X == 4


def test_example_a_raw_and_components_agree():
    A = scheme_from_fixture("noether_principal_a")
    B = scheme_from_fixture("noether_principal_a_components")
    assert A.I_X == B.I_X
    assert hf(A, 4) == [1, 3, 4, 5, 5] and A.r_X == 3
    assert [(c.multiplicity, c.kappa, c.socle_dim) for c in B.components] == [(3, 1, 2), (2, 2, 2)]
    assert not B.components[0].is_gorenstein and B.components[1].is_gorenstein


def test_example_b_raw_and_components_agree():
    A = scheme_from_fixture("gorenstein_b")
    B = scheme_from_fixture("gorenstein_b_components")
    assert A.I_X == B.I_X and hf(A, 3) == [1, 4, 5, 5]
    for p in [(1, 0, 0, 1), (1, 1, -1, -1), (1, 0, 0, 0)]:
        assert all(g.evaluate(p) == 0 for g in A.I_X.groebner_basis())
    assert [c.multiplicity for c in B.components] == [1, 2, 2]
    assert [c.point() for c in B.components] == [(0, 0, 1), (1, -1, -1), (0, 0, 0)]


def test_ags_scheme_components():
    X = scheme_from_fixture("ags_x")
    assert hf(X, 3) == [1, 4, 5, 5]
    g = generic_position_check(X)
    assert g["is_generic"] and g["alpha_X"] == g["r_X"] == 2
    p4 = X.components[3]
    assert (p4.multiplicity, p4.kappa, p4.socle_dim) == (2, 1, 1)


def test_four_component_twocubics():
    X = scheme_from_fixture("twocubics_components")
    assert hf(X, 5) == [1, 3, 6, 8, 9, 9]
    assert [c.multiplicity for c in X.components] == [1, 1, 2, 5]
    # the last component is a single point whose residue field has degree 5
    assert [c.kappa for c in X.components] == [1, 1, 1, 5]
    assert X.components[2].point() == (-1, -1)
    assert X.components[3].point() is None


def test_local_ring_data():
    X = scheme_from_fixture("ags_y")
    lr = local_ring(X, 3)
    assert lr["m_j"] == 2 and lr["kappa_j"] == 1 and lr["is_gorenstein"]
    assert local_ring(X, 0)["m_j"] == 1
    with pytest.raises(SchemeError):
        local_ring(scheme_from_fixture("sec2_monomial"), 0)


@pytest.mark.parametrize(
    "kwargs, code",
    [
        (dict(ideal=["X1^2 + X0", "X2"]), "not-homogeneous"),
        (dict(ideal=["X1"]), "not-zero-dimensional"),
        (dict(ideal=["X0", "X1^2"]), "meets-hyperplane"),
        (dict(components=[{"point": ["1", "0", "0"]}, {"point": ["2", "0", "0"]}]), "duplicate-point"),
        (dict(components=[{"point": ["0", "1", "0"]}]), "meets-hyperplane"),
        (dict(components=[{"point": ["1", "1", "0"], "primary": ["X1", "X2"]}]), "point-mismatch"),
        (dict(components=[{"primary": ["X1"]}]), "meets-hyperplane"),
        (dict(components=[]), "bad-input"),
        (dict(), "bad-input"),
    ],
)
def test_invalid_inputs(kwargs, code):
    with pytest.raises(SchemeError) as info:
        build_scheme(QQ, 2, **kwargs)
    assert info.value.code == code


def test_embedded_component_is_saturated_away():
    X = build_scheme(QQ, 2, ideal=["X0*X1", "X0*X2", "X1*X2", "X1^2 - X2^2"])
    assert X.degree == 1 and X.warnings


def test_unsaturated_input_warns():
    X = build_scheme(QQ, 2, ideal=["X1^2", "X2^3", "X0*X1*X2^2"])
    Y = build_scheme(QQ, 2, ideal=["X1^2", "X2^3", "X1*X2^2"])
    assert X.I_X == Y.I_X
    assert X.warnings


def test_characteristic_guard():
    with pytest.raises(SchemeError) as info:
        build_scheme(PrimeField(5), 2, ideal=["X1^2", "X2^3"])
    assert info.value.code == "char-guard"


def test_bad_n():
    with pytest.raises(SchemeError):
        build_scheme(QQ, 0, ideal=["X1"])


def test_squarefree_part():
    # (t - 1)^2 (t + 2) -> (t - 1)(t + 2)
    assert upoly_squarefree([2, -3, 0, 1]) == [-2, 1, 1]


def test_finite_algebra_structure():
    aff = affine_ring(QQ, 2)
    alg = FiniteAlgebra(Ideal([aff.parse("X1^2"), aff.parse("X2^3")], None, aff))
    assert alg.dim == 6
    x1, x2 = alg.monomial_vector((1, 0)), alg.monomial_vector((0, 1))
    assert not any(alg.mul(x1, x1))
    assert alg.mul(alg.power(x2, 2), x1) == alg.monomial_vector((1, 2))
    assert alg.minimal_polynomial(1) == [0, 0, 0, 1]
    ann = alg.annihilator([x1, x2])
    assert ann.dim == 1 and ann.contains(alg.monomial_vector((1, 2)))


@pytest.mark.parametrize("field", [QQ, GF], ids=["QQ", "GF"])
@pytest.mark.parametrize("seed", range(5))
def test_hilbert_function_matches_brute_force(field, seed):
    rng = random.Random(seed)
    n = 2 + seed % 2
    X = random_fat_scheme(field, n, 3, rng, fat=1)
    gens = list(X.I_X.groebner_basis())
    for i in range(X.r_X + 2):
        assert X.hilbert(i) == brute_hilbert(gens, X.proj_ring, i)


@pytest.mark.parametrize("seed", range(4))
def test_x0_is_a_nonzerodivisor(seed):
    # multiplication by x0 maps R_i injectively into R_{i+1}
    X = random_fat_scheme(QQ, 2, 3, random.Random(seed), fat=2)
    for i in range(X.r_X + 1):
        assert X.degree_space(i).is_subspace_of(X.degree_space(i + 1))
        assert X.degree_space(i).dim == X.hilbert(i)


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=7))
def test_reduced_points_invariants(seed, s):
    rng = random.Random(seed)
    X = points_scheme(QQ, random_points(QQ, 2, s, rng))
    H = X.hilbert
    assert X.degree == s and X.is_reduced and X.kappa_total == s
    values = [H(i) for i in range(H.r_X + 2)]
    assert values == sorted(values) and values[-1] == s
    assert all(H(i) <= min(s, (i + 1) * (i + 2) // 2) for i in range(H.r_X + 2))
    assert X.is_locally_gorenstein
    # block coordinates invert
    from kaehler_lab.linalg import identity, mat_mul

    assert mat_mul(X.to_blocks, X.from_blocks) == identity(s)
