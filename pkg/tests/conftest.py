import random

import pytest

from rfmseq import Pattern, build_database, parse_mt_database

# The running six-customer example database used by the golden tests.
TABLE1_TEXT = """\
# six-customer worked example
<100> a:2 d:10 -1 <74> a:19 d:20 f:13 -1 <45> f:40 -1 <12> b:15 -1 -2
<100> a:15 d:24 -1 <95> g:50 -1 <81> b:17 -1 -2
<96> a:11 -1 <62> c:21 -1 <58> a:25 -1 <43> c:19 -1 -2
<70> b:8 c:15 -1 <62> b:25 c:12 -1 <58> f:15 -1 -2
<98> a:10 -1 <92> a:21 f:30 -1 -2
<100> c:15 -1 <92> a:20 d:22 -1 <80> a:20 d:21 -1 <71> a:30 b:10 -1 -2
"""


@pytest.fixture(scope="session")
def table1():
    return parse_mt_database(TABLE1_TEXT)


@pytest.fixture()
def table1_path(tmp_path):
    path = tmp_path / "table1.db"
    path.write_text(TABLE1_TEXT, encoding="utf-8")
    return path


def P(*specs: str) -> Pattern:
    """Shorthand: P("a d", "f") is the pattern with itemsets {a,d} then {f}."""
    return Pattern(tuple(tuple(s.split()) for s in specs))


def random_db(rng: random.Random, max_seqs=12, max_items=8, max_itemsets=6,
              max_per_itemset=3, ts_hi=40, money_hi=30):
    """Small random database honoring every model invariant."""
    items = [chr(ord("a") + k) for k in range(rng.randint(2, max_items))]
    rows = []
    for _ in range(rng.randint(1, max_seqs)):
        stamps = sorted(
            (rng.randint(0, ts_hi) for _ in range(rng.randint(1, max_itemsets))),
            reverse=True,
        )
        row = []
        for t in stamps:
            chosen = sorted(rng.sample(items, rng.randint(1, min(max_per_itemset, len(items)))))
            row.append((t, [(it, rng.randint(0, money_hi)) for it in chosen]))
        rows.append(row)
    return build_database(rows)


def random_present_pattern(rng: random.Random, db, max_itemsets=3, max_items=2) -> Pattern:
    """A pattern guaranteed to occur somewhere in db (ignoring any theta)."""
    seq = rng.choice(db.sequences)
    k = rng.randint(1, min(max_itemsets, len(seq.itemsets)))
    positions = sorted(rng.sample(range(len(seq.itemsets)), k))
    itemsets = []
    for q in positions:
        ids = seq.itemsets[q].item_ids()
        take = rng.randint(1, min(max_items, len(ids)))
        itemsets.append(tuple(sorted(rng.sample(ids, take))))
    return Pattern(tuple(itemsets))


def random_pattern(rng: random.Random, db, max_itemsets=3, max_items=2) -> Pattern:
    """Arbitrary pattern over db's alphabet; may or may not occur."""
    items = sorted({i for s in db.sequences for iset in s.itemsets for i in iset.item_ids()})
    itemsets = []
    for _ in range(rng.randint(1, max_itemsets)):
        take = rng.randint(1, min(max_items, len(items)))
        itemsets.append(tuple(sorted(rng.sample(items, take))))
    return Pattern(tuple(itemsets))
