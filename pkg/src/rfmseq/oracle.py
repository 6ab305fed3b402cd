"""Reference miner: exhaustive enumeration straight from the definitions.

Patterns are enumerated canonically (items appended to the last itemset
must be strictly greater; new itemsets may hold any item), carrying the
full list of admissible instance position tuples per sequence. Measures
are read directly off those tuples. The only pruning is frequency
anti-monotonicity: a pattern occurring in fewer sequences than the
frequency threshold cannot have a qualifying extension. No monetary bound
is ever consulted, which keeps this module an independent check on the
optimized engine.

Intended for desk-scale verification; a budget guard refuses databases and
caps whose canonical pattern space is too large to enumerate.
"""

from __future__ import annotations

from .chain import prepare
from .model import MTDatabase, Params, Pattern, PatternStats

DEFAULT_BUDGET = 10**9


class OracleBudgetError(RuntimeError):
    """The requested enumeration is too large for exhaustive verification."""


def is_subsequence_exhaustive(p: Pattern, q: Pattern) -> bool:
    """Containment by trying every position assignment (no greedy shortcuts)."""

    def walk(pi: int, start: int) -> bool:
        if pi == len(p.itemsets):
            return True
        need = set(p.itemsets[pi])
        for qi in range(start, len(q.itemsets)):
            if need.issubset(q.itemsets[qi]) and walk(pi + 1, qi + 1):
                return True
        return False

    return walk(0, 0)


def _maximal_antichain(results):
    out = []
    for i, (p, s) in enumerate(results):
        has_super = any(
            j != i and p != q and is_subsequence_exhaustive(p, q)
            for j, (q, _) in enumerate(results)
        )
        if not has_super:
            out.append((p, s))
    return out


def oracle_mine(db: MTDatabase, params: Params, max_len: int = 8,
                budget: int = DEFAULT_BUDGET) -> list[tuple[Pattern, PatternStats]]:
    """Every pattern of total length <= max_len clearing all three thresholds.

    Results are (pattern, stats) sorted in pattern order; stats agree with
    the measures module exactly (monetary and frequency as integers,
    recency as the same float expression).
    """
    params.validate()
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    idx = prepare(db)
    n_items = len(idx.items)
    if n_items and n_items ** max_len > budget:
        raise OracleBudgetError(
            f"{n_items} items at max_len {max_len} exceeds the enumeration budget {budget}"
        )
    r_min, f_min, m_min = params.thresholds(db)
    decay = 1.0 - params.delta
    theta = params.theta
    seqs = idx.seqs
    out: list[tuple[Pattern, PatternStats]] = []

    # state: sid -> list of (positions tuple, summed monetary of matched items)
    roots: dict[str, dict[int, list[tuple[tuple[int, ...], int]]]] = {}
    for sd in seqs:
        for q0, row in enumerate(sd.rows):
            for item, money, _ in row:
                roots.setdefault(item, {}).setdefault(sd.sid, []).append(((q0 + 1,), money))

    def stats_of(state) -> PatternStats:
        r = 0.0
        m = 0
        for sid in sorted(state):
            sd = seqs[sid - 1]
            tuples = state[sid]
            best_ts = max(sd.ts[t[0][0] - 1] for t in tuples)
            r += decay ** (sd.ct - best_ts)
            m += max(t[1] for t in tuples)
        return PatternStats(r, len(state), m)

    def expand(pattern: Pattern, state):
        last = pattern.last_item()
        kids: dict[tuple[str, str], dict[int, list]] = {}
        for sid, tuples in state.items():
            sd = seqs[sid - 1]
            for positions, money in tuples:
                p_last = positions[-1]
                row = sd.rows[p_last - 1]
                for j in range(sd.pos[p_last - 1][last] + 1, len(row)):
                    item, extra, _ = row[j]
                    kids.setdefault(("i", item), {}).setdefault(sid, []).append(
                        (positions, money + extra)
                    )
                t0 = sd.ts[positions[0] - 1]
                for q in range(p_last + 1, sd.n + 1):
                    # timestamps only fall with position, so the span only grows
                    if theta is not None and t0 - sd.ts[q - 1] > theta:
                        break
                    for item, extra, _ in sd.rows[q - 1]:
                        kids.setdefault(("s", item), {}).setdefault(sid, []).append(
                            (positions + (q,), money + extra)
                        )
        return kids

    def rec(pattern: Pattern, state, length: int) -> None:
        stats = stats_of(state)
        if stats.frequency < f_min:
            return
        if stats.recency >= r_min and stats.monetary >= m_min:
            out.append((pattern, stats))
        if length == max_len:
            return
        kids = expand(pattern, state)
        for kind, item in sorted(kids, key=lambda k: (k[0] == "s", k[1])):
            child = pattern.extend_i(item) if kind == "i" else pattern.extend_s(item)
            rec(child, kids[(kind, item)], length + 1)

    for item in sorted(roots):
        rec(Pattern.single(item), roots[item], 1)
    out.sort(key=lambda r: r[0].sort_key())
    return out


def oracle_mine_maximal(db: MTDatabase, params: Params, max_len: int = 8,
                        budget: int = DEFAULT_BUDGET) -> list[tuple[Pattern, PatternStats]]:
    """oracle_mine filtered to its maximal antichain by pairwise containment."""
    return _maximal_antichain(oracle_mine(db, params, max_len, budget))
