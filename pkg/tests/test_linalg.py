from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from kaehler_lab.linalg import Subspace, identity, inverse, mat_mul, nullspace, rank, rref, solve

small = st.integers(min_value=-4, max_value=4).map(Fraction)


def matrices(rows=4, cols=5):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=1, max_size=rows)


def test_rank_and_nullspace_example():
    a = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(a, 3) == 2
    [v] = nullspace(a, 3)
    assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


def test_inverse_and_solve():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert mat_mul(a, inverse(a)) == identity(2)
    assert solve(a, [3, 2]) == [1, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_subspace_operations():
    s = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    t = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    assert s.dim == 2 and not s.add([1, 1, 0])
    assert (s + t).dim == 3
    meet = s.intersection(t)
    assert meet.dim == 1 and meet.contains([0, 5, 0])
    assert Subspace(3, [[0, 2, 0]]).is_subspace_of(s)


@given(matrices())
def test_rank_nullity(a):
    cols = len(a[0])
    ns = nullspace(a, cols)
    assert rank(a, cols) + len(ns) == cols
    for v in ns:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


@given(matrices())
def test_rref_is_idempotent(a):
    basis, pivots = rref(a, len(a[0]))
    assert rref(basis, len(a[0])) == (basis, pivots)
    for row, c in zip(basis, pivots):
        assert row[c] == 1


@given(matrices(3, 3), matrices(3, 3))
def test_subspace_dimension_formula(a, b):
    s, t = Subspace(3, a), Subspace(3, b)
    assert (s + t).dim + s.intersection(t).dim == s.dim + t.dim
