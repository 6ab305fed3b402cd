"""Core data model for monetary-and-timestamp (MT) sequence databases.

A database holds customer sequences. Each sequence is an ordered run of
itemsets; an itemset carries a purchase timestamp and per-item monetary
values. Timestamps run non-increasing within a sequence: the first itemset
is the most recent purchase, so the sequence's current timestamp CT is the
first itemset's timestamp and every instance has CT - RT >= 0.

All types are immutable after construction and safe to share between
threads. Construction is permissive; semantic checks live in
``validate_database`` so that parsed files can be reported on rather than
rejected token by token.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ItemId = str
Money = int
Timestamp = int


def is_valid_item_id(item: str) -> bool:
    """Item tokens are non-empty and contain no whitespace or ':'."""
    return bool(item) and ":" not in item and not any(ch.isspace() for ch in item)


@dataclass(frozen=True)
class MTItemset:
    """One purchase event: (item, money) pairs bought at ``timestamp``.

    Valid itemsets keep their items strictly increasing by item id, which
    also rules out duplicates.
    """

    timestamp: Timestamp
    items: tuple[tuple[ItemId, Money], ...]

    def item_ids(self) -> tuple[ItemId, ...]:
        return tuple(item for item, _ in self.items)

    @property
    def monetary(self) -> Money:
        return sum(m for _, m in self.items)


@dataclass(frozen=True)
class MTSequence:
    sid: int
    itemsets: tuple[MTItemset, ...]

    @property
    def ct(self) -> Timestamp:
        """Current timestamp: the first (most recent) itemset's timestamp."""
        return self.itemsets[0].timestamp if self.itemsets else 0

    @property
    def total_monetary(self) -> Money:
        return sum(s.monetary for s in self.itemsets)

    def length(self) -> int:
        """Total number of items across all itemsets."""
        return sum(len(s.items) for s in self.itemsets)


@dataclass(frozen=True)
class MTDatabase:
    sequences: tuple[MTSequence, ...]

    @property
    def sequence_count(self) -> int:
        return len(self.sequences)

    @property
    def total_monetary(self) -> Money:
        return sum(q.total_monetary for q in self.sequences)


def itemset(timestamp: Timestamp, pairs: Iterable[tuple[ItemId, Money]]) -> MTItemset:
    """Build an itemset with pairs sorted by item id (duplicates kept)."""
    return MTItemset(timestamp, tuple(sorted(pairs)))


def build_database(rows: Iterable[Iterable[tuple[Timestamp, Iterable[tuple[ItemId, Money]]]]]) -> MTDatabase:
    """Build a database from per-sequence rows of (timestamp, pairs), sids 1..n."""
    seqs = []
    for k, row in enumerate(rows, start=1):
        seqs.append(MTSequence(k, tuple(itemset(ts, pairs) for ts, pairs in row)))
    return MTDatabase(tuple(seqs))


@dataclass(frozen=True)
class Pattern:
    """An ordered list of itemsets of item ids: the object being mined.

    Itemsets are tuples of strictly increasing item ids. The empty pattern
    is the search root only; mined patterns are never empty.
    """

    itemsets: tuple[tuple[ItemId, ...], ...]

    @classmethod
    def of(cls, *itemsets: Iterable[ItemId]) -> "Pattern":
        return cls(tuple(tuple(s) for s in itemsets))

    @classmethod
    def single(cls, item: ItemId) -> "Pattern":
        return cls(((item,),))

    def length(self) -> int:
        """Total item count, i.e. the l in 'l-sequence'."""
        return sum(len(s) for s in self.itemsets)

    def last_item(self) -> ItemId:
        return self.itemsets[-1][-1]

    def extend_i(self, item: ItemId) -> "Pattern":
        """Append ``item`` to the last itemset."""
        return Pattern(self.itemsets[:-1] + (self.itemsets[-1] + (item,),))

    def extend_s(self, item: ItemId) -> "Pattern":
        """Append a new singleton itemset holding ``item``."""
        return Pattern(self.itemsets + ((item,),))

    def sort_key(self):
        return self.itemsets

    def render(self) -> str:
        return "".join("{" + " ".join(s) + "}" for s in self.itemsets)

    def __str__(self) -> str:
        return self.render()


def pattern_compare(p1: Pattern, p2: Pattern) -> int:
    """Total order on patterns: itemset by itemset, item by item, prefix first."""
    k1, k2 = p1.itemsets, p2.itemsets
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


@dataclass(frozen=True)
class Instance:
    """One concrete occurrence of a pattern inside a sequence.

    ``positions`` are 1-based itemset indices, strictly increasing. ``rt``
    is the timestamp of the first matched itemset; ``end_pos`` the last
    matched position.
    """

    sid: int
    positions: tuple[int, ...]
    rt: Timestamp
    end_pos: int


@dataclass(frozen=True)
class PatternStats:
    recency: float
    frequency: int
    monetary: Money


@dataclass(frozen=True)
class Params:
    """Mining thresholds.

    delta: recency decay rate in [0, 1).
    alpha: absolute minimum recency threshold (>= 0).
    beta:  relative minimum frequency threshold; the absolute bound is
           beta * |D|.
    gamma: relative minimum monetary threshold; the absolute bound is
           gamma * M(D).
    theta: maximum time-span length, or None for unbounded.
    """

    delta: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    theta: int | None = None

    def validate(self) -> None:
        if not (0.0 <= self.delta < 1.0):
            raise ValueError(f"delta must be in [0, 1), got {self.delta}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.theta is not None and self.theta < 0:
            raise ValueError(f"theta must be >= 0 or None, got {self.theta}")

    def thresholds(self, db: MTDatabase) -> tuple[float, float, float]:
        """Absolute (recency, frequency, monetary) minimums for ``db``.

        Derived the same way everywhere so the miner and the reference
        enumerator agree bit-for-bit on boundary comparisons.
        """
        return (self.alpha, self.beta * db.sequence_count, self.gamma * db.total_monetary)


@dataclass(frozen=True)
class Violation:
    sid: int
    itemset_index: int
    reason: str


def validate_database(db: MTDatabase) -> list[Violation]:
    """Report every invariant violation; an empty list means the database is valid.

    Violations are data, not failures: callers decide whether to raise.
    """
    out: list[Violation] = []
    for expected_sid, seq in enumerate(db.sequences, start=1):
        if seq.sid != expected_sid:
            out.append(Violation(seq.sid, 0, f"sid out of order (expected {expected_sid})"))
        if not seq.itemsets:
            out.append(Violation(seq.sid, 0, "sequence has no itemsets"))
            continue
        prev_ts = None
        for k, iset in enumerate(seq.itemsets, start=1):
            if iset.timestamp < 0:
                out.append(Violation(seq.sid, k, "negative timestamp"))
            if prev_ts is not None and iset.timestamp > prev_ts:
                out.append(Violation(seq.sid, k, "timestamps not non-increasing"))
            prev_ts = iset.timestamp
            if not iset.items:
                out.append(Violation(seq.sid, k, "empty itemset"))
                continue
            prev_item = None
            for item, money in iset.items:
                if not is_valid_item_id(item):
                    out.append(Violation(seq.sid, k, f"invalid item id {item!r}"))
                if money < 0:
                    out.append(Violation(seq.sid, k, "negative monetary value"))
                if prev_item is not None:
                    if item == prev_item:
                        out.append(Violation(seq.sid, k, "duplicate item in itemset"))
                    elif item < prev_item:
                        out.append(Violation(seq.sid, k, "items not sorted by id"))
                prev_item = item
    return out
