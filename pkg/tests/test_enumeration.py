"""Recursive enumeration engines and the exact uniform sampler."""

import random
from collections import Counter

import pytest

from chainpart.core import (
    BudgetError,
    Partition,
    UnreachableSumError,
    binary_partition,
    brute_force_enumerate,
    make_system,
    value,
)
from chainpart.counting import make_counter
from chainpart.enumeration import (
    ResidueEnumerator,
    SplitEnumerator,
    enumerate_residue,
    sample_uniform,
)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 5), (3, 2), (5, 3), (2, 9)])
def test_engines_equal_oracle(p, q):
    sys_ = make_system(p, q)
    split = SplitEnumerator(sys_)
    residue = ResidueEnumerator(sys_)
    for u in range(0, 250):
        expected = brute_force_enumerate(u, sys_)
        assert split.omega(u) == expected
        assert residue.omega(u) == expected


def test_ground_values(sys23):
    assert enumerate_residue(0, sys23).members == frozenset((Partition(),))
    assert enumerate_residue(1, sys23).members == frozenset((Partition(((0, 0),)),))


def test_unreachable_sum_is_empty(sys35):
    assert enumerate_residue(7, sys35).members == frozenset()


def test_binary_partition_always_present(sys23, sys25):
    for sys_ in (sys23, sys25):
        en = ResidueEnumerator(sys_)
        for u in range(1, 400):
            assert binary_partition(u) in en.omega(u)


def test_members_sum_correctly(sys23):
    en = ResidueEnumerator(sys23)
    counter = make_counter(sys23)
    for u in range(0, 300):
        members = en.omega(u)
        assert all(value(pt, sys23) == u for pt in members)
        assert len({pt.parts for pt in members}) == len(members)
        assert len(members) == counter.w(u)


def test_budget_guard(sys23):
    with pytest.raises(BudgetError):
        SplitEnumerator(sys23, budget=10).omega(60)
    with pytest.raises(BudgetError):
        ResidueEnumerator(sys23, budget=10).omega(60)


def test_sorted_by_value_order(sys23):
    om = enumerate_residue(19, sys23)
    ordered = om.sorted_by_value(sys23)
    firsts = [pt.parts[0] for pt in ordered]
    assert firsts == [(1, 2), (4, 0), (2, 1), (2, 1)]


def test_sampler_single_member(sys23):
    pt = sample_uniform(5, sys23, 7)
    assert pt.parts == ((2, 0), (0, 0))
    with pytest.raises(UnreachableSumError):
        sample_uniform(7, make_system(3, 5), 0)


def test_sampler_two_members_split(sys23):
    rng = random.Random(123)
    counter = make_counter(sys23)
    tally = Counter(sample_uniform(3, sys23, rng, counter).parts for _ in range(1000))
    assert set(tally) == {((0, 1),), ((1, 0), (0, 0))}
    assert min(tally.values()) > 400


def test_sampler_support_and_balance_27(sys23):
    rng = random.Random(9)
    counter = make_counter(sys23)
    members = enumerate_residue(27, sys23).members
    tally = Counter(sample_uniform(27, sys23, rng, counter) for _ in range(3500))
    assert set(tally) == members
    assert min(tally.values()) > 350


def test_sampler_general_path_with_rejection(sys35):
    # u = 30 = (3*5)*2 exercises the filtered branch of the decomposition
    rng = random.Random(4)
    counter = make_counter(sys35)
    members = enumerate_residue(30, sys35).members
    assert len(members) == 2
    tally = Counter(sample_uniform(30, sys35, rng, counter) for _ in range(800))
    assert set(tally) == members
    assert min(tally.values()) > 300
    for u in range(1, 200):
        if counter.w(u):
            assert sample_uniform(u, sys35, rng, counter) in enumerate_residue(u, sys35).members


def test_sampler_deterministic_under_seed(sys23):
    a = [sample_uniform(1000, sys23, 42).parts for _ in range(5)]
    b = [sample_uniform(1000, sys23, 42).parts for _ in range(5)]
    assert a == b


def test_sampler_uniform_on_larger_support(sys23):
    # 19 outcomes at u = 171; chi-square against the 0.99 quantile, 18 dof
    rng = random.Random(6)
    counter = make_counter(sys23)
    members = enumerate_residue(171, sys23).members
    assert len(members) == 19
    draws = 9500
    tally = Counter(sample_uniform(171, sys23, rng, counter) for _ in range(draws))
    assert set(tally) == members
    expected = draws / 19
    stat = sum((tally[pt] - expected) ** 2 / expected for pt in members)
    assert stat < 34.805, stat


def test_sampler_rejection_branch_is_exactly_uniform(sys35):
    # u = 2280 = 15*152: three members, two of them behind the filtered
    # branch whose weight is W(3v) - W(v); frequencies must still be flat
    rng = random.Random(17)
    counter = make_counter(sys35)
    members = enumerate_residue(2280, sys35).members
    assert len(members) == 3
    tally = Counter(sample_uniform(2280, sys35, rng, counter) for _ in range(3000))
    assert set(tally) == members
    assert all(880 <= n <= 1120 for n in tally.values()), dict(tally)
