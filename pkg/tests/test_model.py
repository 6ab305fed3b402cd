import random

import pytest
from hypothesis import given, strategies as st

from rfmseq import (
    MTDatabase,
    MTItemset,
    MTSequence,
    Params,
    build_database,
    pattern_compare,
    validate_database,
)

from conftest import P, random_db


def test_table1_totals(table1):
    assert table1.sequence_count == 6
    assert table1.total_monetary == 575
    per_seq = [q.total_monetary for q in table1.sequences]
    assert per_seq == [119, 106, 76, 75, 61, 138]


def test_table1_validates_clean(table1):
    assert validate_database(table1) == []


def test_increasing_timestamps_flagged():
    db = build_database([[(50, [("a", 1)]), (80, [("b", 2)])]])
    report = validate_database(db)
    assert len(report) == 1
    assert report[0].reason == "timestamps not non-increasing"
    assert (report[0].sid, report[0].itemset_index) == (1, 2)


def test_duplicate_item_flagged():
    db = MTDatabase((MTSequence(1, (MTItemset(10, (("a", 1), ("a", 2))),)),))
    report = validate_database(db)
    assert [v.reason for v in report] == ["duplicate item in itemset"]


def test_unsorted_items_flagged():
    db = MTDatabase((MTSequence(1, (MTItemset(10, (("b", 1), ("a", 2))),)),))
    assert [v.reason for v in validate_database(db)] == ["items not sorted by id"]


def test_equal_adjacent_timestamps_allowed():
    db = build_database([[(10, [("a", 1)]), (10, [("b", 1)])]])
    assert validate_database(db) == []


def test_more_violations():
    db = MTDatabase(
        (
            MTSequence(2, (MTItemset(5, ()),)),
            MTSequence(2, (MTItemset(-1, (("x y", -3),)),)),
        )
    )
    reasons = {v.reason for v in validate_database(db)}
    assert "empty itemset" in reasons
    assert "negative timestamp" in reasons
    assert "negative monetary value" in reasons
    assert any(r.startswith("sid out of order") for r in reasons)
    assert any(r.startswith("invalid item id") for r in reasons)


def test_pattern_compare_examples():
    assert pattern_compare(P("a"), P("a")) == 0
    assert pattern_compare(P("a"), P("a d")) == -1
    assert pattern_compare(P("a", "b"), P("a", "g")) == -1
    assert pattern_compare(P("a", "g"), P("a", "b")) == 1
    assert pattern_compare(P("a"), P("a", "a")) == -1


def test_pattern_render_and_length():
    p = P("a d", "f")
    assert str(p) == "{a d}{f}"
    assert p.length() == 3
    assert p.last_item() == "f"
    assert p.extend_i("g") == P("a d", "f g")
    assert p.extend_s("a") == P("a d", "f", "a")


@given(st.integers(0, 2**32))
def test_pattern_compare_total_order(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    from conftest import random_pattern

    pats = [random_pattern(rng, db) for _ in range(8)]
    keyed = sorted(pats, key=lambda p: p.sort_key())
    for a, b in zip(keyed, keyed[1:]):
        assert pattern_compare(a, b) <= 0
    for a in pats:
        for b in pats:
            c = pattern_compare(a, b)
            assert c == -pattern_compare(b, a)
            if c == 0:
                assert a == b


def test_params_validation():
    Params(0.5, 1.0, 0.2, 0.1, 60).validate()
    Params().validate()
    with pytest.raises(ValueError):
        Params(delta=1.0).validate()
    with pytest.raises(ValueError):
        Params(delta=-0.1).validate()
    with pytest.raises(ValueError):
        Params(alpha=-1).validate()
    with pytest.raises(ValueError):
        Params(theta=-5).validate()
    # relative thresholds above 1 are allowed: they just empty the result
    Params(beta=2.0, gamma=1.5).validate()


def test_params_thresholds(table1):
    r_min, f_min, m_min = Params(0.1, 1.44, 0.2, 0.25, 60).thresholds(table1)
    assert r_min == 1.44
    assert f_min == pytest.approx(1.2)
    assert m_min == pytest.approx(143.75)
