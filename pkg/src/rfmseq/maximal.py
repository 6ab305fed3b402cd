"""Maximal pattern filtering: containment checks and the antichain set.

A pattern is maximal within a result set when none of its proper
super-sequences is also in the set. The set is maintained incrementally:
each new pattern is judged against current members (rejected if some member
contains it) and strictly contained members are evicted. The final content
equals the maximal antichain of everything ever judged, independent of
arrival order.
"""

from __future__ import annotations

from .model import Pattern, PatternStats


def is_subsequence(p: Pattern, q: Pattern) -> bool:
    """Whether p embeds into q: itemsets in order, each a subset (non-strict).

    Greedy leftmost matching; for sequence-of-set containment the greedy
    choice is always safe.
    """
    qi = 0
    qsets = q.itemsets
    n = len(qsets)
    for pset in p.itemsets:
        need = set(pset)
        while qi < n and not need.issubset(qsets[qi]):
            qi += 1
        if qi == n:
            return False
        qi += 1
    return True


def is_proper_subsequence(p: Pattern, q: Pattern) -> bool:
    return p != q and is_subsequence(p, q)


def _item_bag(p: Pattern) -> frozenset:
    return frozenset(item for s in p.itemsets for item in s)


class MaximalSet:
    """Mutually incomparable patterns, bucketed by total item count.

    Super-sequence checks only consult buckets of equal or greater length,
    sub-sequence evictions only strictly smaller ones; equal-length
    containment implies equality, so that bucket needs a lookup only. Each
    member carries its item set so most pairs are dismissed by a subset
    test before the positional scan.
    """

    def __init__(self):
        self._by_len: dict[int, dict[Pattern, tuple[PatternStats, frozenset]]] = {}

    def __len__(self) -> int:
        return sum(len(b) for b in self._by_len.values())

    def judge(self, p: Pattern) -> bool:
        """False iff some member is a super-sequence of p. Evicts members
        strictly contained in p; the caller inserts p when True."""
        n = p.length()
        bag = _item_bag(p)
        for length, bucket in self._by_len.items():
            if length > n:
                for q, (_, q_bag) in bucket.items():
                    if bag <= q_bag and is_subsequence(p, q):
                        # nothing to evict: a member under p would also sit
                        # under this super-sequence, impossible in an antichain
                        return False
            elif length == n and p in bucket:
                return False
        for length, bucket in self._by_len.items():
            if length < n:
                doomed = [
                    q for q, (_, q_bag) in bucket.items()
                    if q_bag <= bag and is_subsequence(q, p)
                ]
                for q in doomed:
                    del bucket[q]
        return True

    def insert(self, p: Pattern, stats: PatternStats) -> None:
        self._by_len.setdefault(p.length(), {})[p] = (stats, _item_bag(p))

    def items(self) -> list[tuple[Pattern, PatternStats]]:
        out = []
        for bucket in self._by_len.values():
            out.extend((p, stats) for p, (stats, _) in bucket.items())
        return out


def maximal_judge(p: Pattern, mrfms: MaximalSet) -> bool:
    """Judge ``p`` against the maintained set, evicting subsumed members.

    Returns True when ``p`` belongs in the set; the caller inserts it.
    """
    return mrfms.judge(p)


def maximal_filter(results: list[tuple[Pattern, PatternStats]]) -> list[tuple[Pattern, PatternStats]]:
    """The maximal antichain of a finished result list (order preserved)."""
    mset = MaximalSet()
    for p, s in results:
        if mset.judge(p):
            mset.insert(p, s)
    keep = {p for p, _ in mset.items()}
    return [(p, s) for p, s in results if p in keep]
