"""Definition-level computation of instances, time spans, and R/F/M values.

Everything here works straight from the definitions by enumerating pattern
instances, with no projection structures or bounds. It is deliberately slow
and serves as the semantic ground truth for the optimized mining engine.

All three measures consider only admissible instances: an instance is
admissible when its time span (first matched timestamp minus last matched
timestamp) does not exceed theta.
"""

from __future__ import annotations

from .model import (
    Instance,
    MTDatabase,
    MTSequence,
    Params,
    Pattern,
    PatternStats,
)


def _is_subitemset(pattern_items: tuple[str, ...], itemset_ids: frozenset[str]) -> bool:
    return all(item in itemset_ids for item in pattern_items)


def instances_of(pattern: Pattern, seq: MTSequence) -> list[Instance]:
    """Every strictly-increasing position assignment embedding the pattern.

    Each pattern itemset must be a sub-itemset of the sequence itemset at
    its mapped position. Returns instances in lexicographic position order.
    """
    if not pattern.itemsets:
        return []
    id_sets = [frozenset(iset.item_ids()) for iset in seq.itemsets]
    n = len(seq.itemsets)
    k = len(pattern.itemsets)
    out: list[Instance] = []

    def walk(depth: int, start: int, positions: tuple[int, ...]):
        if depth == k:
            out.append(
                Instance(
                    sid=seq.sid,
                    positions=positions,
                    rt=seq.itemsets[positions[0] - 1].timestamp,
                    end_pos=positions[-1],
                )
            )
            return
        wanted = pattern.itemsets[depth]
        for q in range(start, n + 1):
            if _is_subitemset(wanted, id_sets[q - 1]):
                walk(depth + 1, q + 1, positions + (q,))

    walk(0, 1, ())
    return out


def tsp(instance: Instance, seq: MTSequence) -> int:
    """Time-span length: first matched timestamp minus last matched timestamp."""
    return instance.rt - seq.itemsets[instance.end_pos - 1].timestamp


def admissible_instances(pattern: Pattern, seq: MTSequence, theta: int | None) -> list[Instance]:
    """Instances whose time span is within theta (all of them when unbounded)."""
    inst = instances_of(pattern, seq)
    if theta is None:
        return inst
    return [i for i in inst if tsp(i, seq) <= theta]


def instance_monetary(instance: Instance, pattern: Pattern, seq: MTSequence) -> int:
    """Summed monetary value of the items the instance matched."""
    total = 0
    for wanted, q in zip(pattern.itemsets, instance.positions):
        money = dict(seq.itemsets[q - 1].items)
        total += sum(money[item] for item in wanted)
    return total


def recency(pattern: Pattern, seq: MTSequence, delta: float, theta: int | None = None) -> float:
    """Max over admissible instances of (1 - delta)^(CT - RT); 0 when absent."""
    inst = admissible_instances(pattern, seq, theta)
    if not inst:
        return 0.0
    decay = 1.0 - delta
    best_rt = max(i.rt for i in inst)
    return decay ** (seq.ct - best_rt)


def db_recency(pattern: Pattern, db: MTDatabase, delta: float, theta: int | None = None) -> float:
    return sum(recency(pattern, seq, delta, theta) for seq in db.sequences)


def frequency(pattern: Pattern, db: MTDatabase, theta: int | None = None) -> int:
    """Number of sequences containing at least one admissible instance."""
    return sum(1 for seq in db.sequences if admissible_instances(pattern, seq, theta))


def monetary(pattern: Pattern, seq: MTSequence, theta: int | None = None) -> int:
    """Max over admissible instances of the instance's summed monetary value."""
    inst = admissible_instances(pattern, seq, theta)
    if not inst:
        return 0
    return max(instance_monetary(i, pattern, seq) for i in inst)


def db_monetary(pattern: Pattern, db: MTDatabase, theta: int | None = None) -> int:
    return sum(monetary(pattern, seq, theta) for seq in db.sequences)


def pattern_stats(pattern: Pattern, db: MTDatabase, delta: float, theta: int | None = None) -> PatternStats:
    return PatternStats(
        recency=db_recency(pattern, db, delta, theta),
        frequency=frequency(pattern, db, theta),
        monetary=db_monetary(pattern, db, theta),
    )


def is_rfm(pattern: Pattern, db: MTDatabase, params: Params) -> tuple[bool, PatternStats]:
    """Whether the pattern clears all three thresholds; returns the stats too."""
    r_min, f_min, m_min = params.thresholds(db)
    stats = pattern_stats(pattern, db, params.delta, params.theta)
    ok = stats.recency >= r_min and stats.frequency >= f_min and stats.monetary >= m_min
    return ok, stats
