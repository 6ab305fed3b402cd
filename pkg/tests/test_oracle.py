import random

import pytest
from hypothesis import given, settings, strategies as st

from rfmseq import (
    Params,
    PatternStats,
    is_subsequence,
    measures,
    oracle_mine,
    oracle_mine_maximal,
    parse_mt_database,
)
from rfmseq.oracle import OracleBudgetError, _maximal_antichain

from conftest import P, random_db

S = PatternStats(1.0, 1, 1)


def test_single_item_patterns_at_half_frequency(table1):
    res = oracle_mine(table1, Params(0.01, 0.0, 0.5, 0.0, None), max_len=1)
    by_pattern = {p: s for p, s in res}
    assert set(by_pattern) == {P("a"), P("b"), P("c"), P("d"), P("f")}
    assert by_pattern[P("a")].frequency == 5
    assert by_pattern[P("b")].frequency == 4
    assert by_pattern[P("c")].frequency == 3
    assert P("g") not in by_pattern


def test_empty_database():
    assert oracle_mine(parse_mt_database(""), Params(), max_len=3) == []


def test_budget_refusal(table1):
    with pytest.raises(OracleBudgetError):
        oracle_mine(table1, Params(), max_len=8, budget=10)
    # generous budget passes
    oracle_mine(table1, Params(0.0, 0.0, 0.9, 0.0, None), max_len=2, budget=10**9)


def test_max_len_caps_results(table1):
    res = oracle_mine(table1, Params(), max_len=2)
    assert all(p.length() <= 2 for p, _ in res)


def test_results_sorted(table1):
    res = oracle_mine(table1, Params(0.0, 0.0, 0.3, 0.0, None), max_len=3)
    keys = [p.sort_key() for p, _ in res]
    assert keys == sorted(keys)


@given(st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_self_consistency_against_measures(seed):
    rng = random.Random(seed)
    db = random_db(rng, max_seqs=6, max_items=5, max_itemsets=4)
    params = Params(
        rng.choice([0.0, 0.01, 0.1]),
        rng.choice([0.0, 0.3]),
        rng.choice([0.0, 0.3]),
        rng.choice([0.0, 0.1]),
        rng.choice([None, 0, 12]),
    )
    res = oracle_mine(db, params, max_len=3)
    for p, s in res:
        ok, stats = measures.is_rfm(p, db, params)
        assert ok
        assert stats.frequency == s.frequency
        assert stats.monetary == s.monetary
        assert abs(stats.recency - s.recency) < 1e-9


def test_maximal_antichain_examples():
    rows = [
        (P("a b c", "d e f", "e"), S),
        (P("c", "e"), S),
        (P("d e"), S),
        (P("e", "f"), S),
    ]
    kept = {p for p, _ in _maximal_antichain(rows)}
    assert kept == {P("a b c", "d e f", "e"), P("e", "f")}
    assert _maximal_antichain([(P("a"), S)]) == [(P("a"), S)]
    nested = [(P("a"), S), (P("a", "b"), S), (P("a", "b", "c"), S)]
    assert [p for p, _ in _maximal_antichain(nested)] == [P("a", "b", "c")]


def test_oracle_mine_maximal(table1):
    params = Params(0.01, 0.0, 0.3, 0.0, None)
    full = oracle_mine(table1, params, max_len=3)
    maxi = oracle_mine_maximal(table1, params, max_len=3)
    kept = {p for p, _ in maxi}
    assert kept < {p for p, _ in full} or kept == {p for p, _ in full}
    for p, _ in full:
        assert any(is_subsequence(p, q) for q, _ in maxi)


def test_zero_thresholds_exclude_absent_patterns(table1):
    # only patterns actually occurring in the data are enumerable
    res = oracle_mine(table1, Params(), max_len=1)
    assert {p.itemsets[0][0] for p, _ in res} == {"a", "b", "c", "d", "f", "g"}
