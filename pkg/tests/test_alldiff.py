from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sudokit.alldiff import (AlldiffInstance, HallInterval, Level, ScaleExceeded, ValueGraph,
                             candidate_intervals, hall_set_of, leconte_range_filter,
                             maximum_matching, naive_filter, oracle_filter, puget_bounds_filter,
                             regin_filter)

FILTERS = [naive_filter, regin_filter, puget_bounds_filter, leconte_range_filter]

instances = st.lists(st.frozensets(st.integers(1, 6), min_size=1, max_size=6),
                     min_size=1, max_size=6)


def fs(*sets):
    return [frozenset(s) for s in sets]


def solutions(domains):
    return [t for t in product(*[sorted(d) for d in domains]) if len(set(t)) == len(t)]


def test_worked_bounds_example():
    inst = fs({1, 2}, {1, 2}, {2, 3})
    want = fs({1, 2}, {1, 2}, {3})
    assert puget_bounds_filter(inst) == want
    assert leconte_range_filter(inst) == want
    assert regin_filter(inst) == want
    assert naive_filter(inst) == inst


def test_instance_wrapper():
    inst = AlldiffInstance.of({1, 2}, {1, 2}, {2, 3})
    assert inst.variables == ("x1", "x2", "x3")
    assert regin_filter(inst) == fs({1, 2}, {1, 2}, {3})
    with pytest.raises(ValueError):
        AlldiffInstance(())


def test_infeasible():
    for f in FILTERS:
        assert f(fs({1}, {1})) is None
        assert f(fs({1}, set())) is None
    assert regin_filter(fs({1, 2}, {1, 2}, {1, 2})) is None
    assert puget_bounds_filter(fs({1, 2}, {1, 2}, {1, 2})) is None


def test_strength_differences():
    # range removes a Hall interval from the middle of a domain, bounds cannot
    inst = fs({1, 2}, {1, 2}, {0, 1, 2, 3})
    assert puget_bounds_filter(inst)[2] == {0, 1, 2, 3}
    assert leconte_range_filter(inst)[2] == {0, 3}
    # holes are invisible to interval reasoning but not to matching
    inst = fs({1, 3}, {1, 3}, {1, 2, 3})
    assert leconte_range_filter(inst)[2] == {1, 2, 3}
    assert regin_filter(inst)[2] == {2}


def test_naive_chains_singletons():
    assert naive_filter(fs({1}, {1, 2}, {1, 2, 3})) == fs({1}, {2}, {3})


def test_matching_on_example():
    g = ValueGraph.from_domains(fs({1, 2}, {1, 2}, {2, 3}))
    m = maximum_matching(g)
    assert len(m) == 3 and m.covers(range(3))
    assert len(set(m.pairs.values())) == 3
    assert all(v in g.adjacency[x] for x, v in m.pairs.items())


def test_hall_intervals():
    doms = fs({1, 2}, {1, 2}, {2, 3})
    halls = [iv for iv in candidate_intervals(doms) if iv.is_hall]
    assert HallInterval(1, 2, frozenset({0, 1})) in halls
    assert hall_set_of(doms, [0, 1]).is_hall
    assert not hall_set_of(doms, [0, 2]).is_hall


def test_oracle_scale_limit():
    with pytest.raises(ScaleExceeded):
        oracle_filter([frozenset(range(12))] * 11)


@settings(max_examples=300, deadline=None)
@given(instances)
def test_filters_match_oracles(doms):
    assert regin_filter(doms) == oracle_filter(doms, Level.HYPERARC)
    assert puget_bounds_filter(doms) == oracle_filter(doms, Level.BOUNDS)
    assert leconte_range_filter(doms) == oracle_filter(doms, Level.RANGE)


@settings(max_examples=300, deadline=None)
@given(instances)
def test_inclusion_chain(doms):
    r, lc, p = regin_filter(doms), leconte_range_filter(doms), puget_bounds_filter(doms)
    if r is None or lc is None or p is None:
        # a stronger filter detects every infeasibility a weaker one does
        assert p is not None or lc is None
        assert lc is not None or r is None
        return
    for a, b, c, d in zip(r, lc, p, doms):
        assert a <= b <= c <= d


@settings(max_examples=300, deadline=None)
@given(instances)
def test_idempotence(doms):
    for f in FILTERS:
        once = f(doms)
        if once is not None:
            assert f(once) == once


@settings(max_examples=300, deadline=None)
@given(instances)
def test_regin_infeasible_iff_no_solution(doms):
    sols = solutions(doms)
    out = regin_filter(doms)
    assert (out is None) == (not sols)
    if out is not None:
        # hyperarc consistency: exactly the values used by some solution survive
        for i, d in enumerate(out):
            assert d == {t[i] for t in sols}


@settings(max_examples=200, deadline=None)
@given(instances, st.randoms(use_true_random=False))
def test_matching_size_invariant_under_reordering(doms, rnd):
    shuffled = list(doms)
    rnd.shuffle(shuffled)
    a = maximum_matching(ValueGraph.from_domains(doms))
    b = maximum_matching(ValueGraph.from_domains(shuffled))
    assert len(a) == len(b)
