"""Least part counts, witnesses, statistics, and the powering harness."""

import math
import random

import pytest

from chainpart.core import UnreachableSumError, chain_census, make_system, validate, value
from chainpart.shortest import ChainCost, ShortestTable, chain_cost, chain_pow, sigma


def test_sigma_19(sys23):
    res = sigma(19, sys23)
    assert res.sigma == 2
    assert res.witness == validate([18, 1], sys23)


def test_sigma_geometric_families(sys23):
    table = ShortestTable(sys23)
    for a in range(0, 21):
        assert table.sigma(3 * 2**a - 1) == a + 1
        assert table.sigma(3 * 2**a) == 1


def test_sigma_matches_oracle(sys23, sys35):
    for sys_ in (sys23, sys35):
        census = chain_census(500, sys_)
        table = ShortestTable(sys_)
        arr = table.scan(500)
        for u in range(1, 501):
            if census.min_len[u] is None:
                assert arr[u] == math.inf
            else:
                assert arr[u] == census.min_len[u]


def test_sigma_case_identities(sys23):
    table = ShortestTable(sys23)
    arr = table.scan(60_000)
    for u in range(1, 10_000):
        assert arr[6 * u] == min(arr[3 * u], arr[2 * u])
        assert arr[6 * u + 1] == 1 + arr[6 * u]


def test_witness_is_valid_and_shortest(sys23):
    table = ShortestTable(sys23)
    census = chain_census(300, sys23)
    for u in range(1, 301):
        res = table.witness(u)
        assert value(res.witness, sys23) == u
        assert len(res.witness) == res.sigma == census.min_len[u]


def test_sigma_unreachable(sys35):
    with pytest.raises(UnreachableSumError):
        ShortestTable(sys35).sigma(7)


def test_stats_small_exact(sys23):
    stats = ShortestTable(sys23).stats(10)
    # sigma on 2..10: 1 1 1 2 1 2 1 1 2
    assert stats.histogram == {1: 6, 2: 3}
    assert stats.mean_ratio > 0


def test_stats_skip_unreachable_sums(sys35):
    stats = ShortestTable(sys35).stats(20)
    census = chain_census(20, sys35)
    reachable = sum(1 for u in range(2, 21) if census.counts[u] > 0)
    assert sum(stats.histogram.values()) == reachable


def test_chain_cost(sys23):
    assert chain_cost(validate([18, 1], sys23)) == ChainCost(1, 2, 1)
    assert chain_cost(validate([], sys23)) == ChainCost(0, 0, 0)


def test_chain_pow_reference(sys23):
    assert chain_pow(5, 19, 101, sys23) == pow(5, 19, 101)
    assert chain_pow(7, 1, 11, sys23) == 7
    assert chain_pow(7, 0, 11, sys23) == 1
    rng = random.Random(8)
    table = ShortestTable(sys23)
    for _ in range(400):
        g = rng.randrange(0, 10**9)
        u = rng.randrange(1, 10**6)
        m = rng.randrange(2, 10**9)
        wit = table.witness(u).witness
        assert chain_pow(g, u, m, sys23, wit) == pow(g, u, m)


def test_chain_pow_validations(sys23):
    with pytest.raises(ValueError):
        chain_pow(3, 10, 1, sys23)
    with pytest.raises(ValueError):
        chain_pow(3, 10, 7, sys23, witness=validate([8, 1], sys23))
