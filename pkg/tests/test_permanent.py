import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sudokit.permanent import (NotDoublyStochastic, NotPermutationInstance, ScaleExceeded,
                               ZeroRowSum, alldiff_solution_count, is_doubly_stochastic,
                               minc_bound_holds, minc_upper_bound, permanent_brute,
                               permanent_ryser, read_dense, representation_matrix,
                               shifted_permanent, vdw_lower_bound, write_dense)

J4 = [[1] * 4 for _ in range(4)]

square01 = st.integers(1, 6).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k))
square_int = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k), min_size=k, max_size=k))


def derangements(k: int) -> int:
    return round(math.factorial(k) * sum(Fraction((-1) ** r, math.factorial(r)) for r in range(k + 1)))


def test_all_ones():
    assert permanent_brute(J4) == permanent_ryser(J4) == 24


@pytest.mark.parametrize("k", range(1, 9))
def test_derangements(k):
    a = [[0 if i == j else 1 for j in range(k)] for i in range(k)]
    assert permanent_ryser(a) == derangements(k) == shifted_permanent(-1, k)
    if k == 4:
        assert permanent_brute(a) == 9


def test_shifted_identity():
    assert shifted_permanent(0, 5) == 120
    assert shifted_permanent(1, 3) == permanent_ryser([[2, 1, 1], [1, 2, 1], [1, 1, 2]])
    assert shifted_permanent(Fraction(1, 2), 2) == Fraction(13, 4)
    with pytest.raises(ScaleExceeded):
        shifted_permanent(1, 13)


def test_empty_and_scale_limits():
    assert permanent_ryser([]) == 1
    with pytest.raises(ScaleExceeded):
        permanent_brute([[1] * 9 for _ in range(9)])
    with pytest.raises(ValueError):
        permanent_ryser([[1, 2]])


@settings(max_examples=200, deadline=None)
@given(square01)
def test_ryser_equals_brute_01(a):
    assert permanent_ryser(a) == permanent_brute(a)


@settings(max_examples=200, deadline=None)
@given(square_int)
def test_ryser_equals_brute_int(a):
    assert permanent_ryser(a) == permanent_brute(a)


def test_float_accuracy():
    rng = random.Random(1)
    for _ in range(50):
        k = rng.randint(1, 6)
        a = [[rng.uniform(-1, 1) for _ in range(k)] for _ in range(k)]
        exact = permanent_brute([[Fraction(x) for x in row] for row in a])
        got = permanent_ryser(a)
        assert abs(got - float(exact)) <= 1e-9 * max(1.0, abs(float(exact)))


@settings(max_examples=100, deadline=None)
@given(square_int, st.randoms(use_true_random=False))
def test_invariant_under_row_and_column_permutations(a, rnd):
    k = len(a)
    p, q = list(range(k)), list(range(k))
    rnd.shuffle(p)
    rnd.shuffle(q)
    b = [[a[p[i]][q[j]] for j in range(k)] for i in range(k)]
    assert permanent_ryser(b) == permanent_ryser(a)


@settings(max_examples=100, deadline=None)
@given(square_int, st.data())
def test_multilinear_in_rows(a, data):
    k = len(a)
    i = data.draw(st.integers(0, k - 1))
    u = data.draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))
    v = data.draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))

    def with_row(r):
        return [r if t == i else row for t, row in enumerate(a)]

    s = [x + y for x, y in zip(u, v)]
    assert permanent_ryser(with_row(s)) == permanent_ryser(with_row(u)) + permanent_ryser(with_row(v))


def test_van_der_waerden_equality_case():
    a = [[Fraction(1, 3)] * 3 for _ in range(3)]
    assert is_doubly_stochastic(a)
    assert permanent_ryser(a) == vdw_lower_bound(a) == Fraction(2, 9)
    with pytest.raises(NotDoublyStochastic):
        vdw_lower_bound(J4)


def test_minc_equality_on_all_ones():
    assert minc_bound_holds(J4, 24)
    assert not minc_bound_holds(J4, 25)
    assert minc_upper_bound(J4) == pytest.approx(24)
    with pytest.raises(ZeroRowSum):
        minc_upper_bound([[0, 0], [1, 1]])


def test_sandwich_for_regular_01_matrices():
    # circulant matrices with s ones per row and column
    for k in range(2, 8):
        for s in range(1, k + 1):
            a = [[1 if (j - i) % k < s else 0 for j in range(k)] for i in range(k)]
            per = permanent_ryser(a)
            scaled = [[Fraction(x, s) for x in row] for row in a]
            assert vdw_lower_bound(scaled) * s ** k <= per
            assert minc_bound_holds(a, per)


def test_alldiff_count():
    assert alldiff_solution_count([{1, 2}, {1, 2}, {2, 3}]) == 2
    mat, values = representation_matrix([{1, 2}, {1, 2}, {2, 3}])
    assert values == [1, 2, 3]
    assert mat == [[1, 1, 0], [1, 1, 1], [0, 0, 1]]
    with pytest.raises(NotPermutationInstance):
        alldiff_solution_count([{1, 2}, {2, 3}])


def test_dense_round_trip():
    a = [[1, Fraction(1, 3)], [0, 2]]
    assert read_dense(write_dense(a)) == a
    assert read_dense("order 2\n1 0\n0 1\n") == [[1, 0], [0, 1]]
    assert read_dense("order 1\n0.5\n") == [[0.5]]
    with pytest.raises(ValueError):
        read_dense("order 2\n1 0\n")
    with pytest.raises(ValueError):
        read_dense("2\n1 0\n0 1\n")
