"""Depth-first miner for compact high recency/frequency/monetary patterns.

Top level: derive absolute thresholds, erase items that no pattern can use
(frequency or sequence-weighted monetary below threshold), root a subtree
at every surviving item, and recurse. Recursion scans a node's chain once,
building every extension child along the way, drops children whose prefix
monetary bound or time-span window rules them out, then emits and descends
according to the threshold gates.

Items are erased from a working view only: occurrences of erased items are
skipped during chain construction and extension scans, but remaining
monetary values and sequence totals keep their original values, so the
bounds stay exactly the ones the soundness arguments license.

Descending is gated on recency and frequency (both only shrink along
extensions) and, when enabled, on the extension monetary bound. Item
erasure is gated on frequency and the sequence-weighted bound only:
those two conditions condemn every pattern *containing* the item, while a
recency failure only condemns patterns *starting* at it, which the root
gate already covers. Ordering is deterministic: itemset-growing children
before sequence-growing ones, each in ascending item order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .chain import Chain, ChainElement, DatabaseIndex, _groups, prepare
from .maximal import MaximalSet
from .model import ItemId, MTDatabase, Params, Pattern, PatternStats


@dataclass(frozen=True)
class StrategyToggles:
    """Enable/disable individual monetary-bound prunes (for soundness testing)."""

    use_swm: bool = True
    use_em: bool = True
    use_pm: bool = True


ALL_ON = StrategyToggles()
ALL_OFF = StrategyToggles(False, False, False)


@dataclass
class PruneCounters:
    swm: int = 0
    em: int = 0
    pm: int = 0
    theta: int = 0

    def add(self, other: "PruneCounters") -> None:
        self.swm += other.swm
        self.em += other.em
        self.pm += other.pm
        self.theta += other.theta


@dataclass
class MiningResult:
    patterns: list[tuple[Pattern, PatternStats]]
    candidate_count: int
    visited_nodes: int
    elapsed: float
    prune: PruneCounters
    rfm_count: int
    compression_rate: float | None = None


@dataclass(frozen=True)
class CandidateEvent:
    """Observer payload for every evaluated candidate chain."""

    parent: Pattern | None
    child: Pattern
    kind: str  # 'root', 'i', or 's'
    stats: PatternStats
    em_total: int
    pm_value: int | None
    parent_em_total: int | None


Observer = Callable[[CandidateEvent], None]


class _Ctx:
    __slots__ = (
        "idx", "delta", "decay", "r_min", "f_min", "m_min", "theta",
        "toggles", "erased", "max_len", "observer",
    )

    def __init__(self, idx, params: Params, thresholds, toggles, erased, max_len, observer):
        self.idx = idx
        self.delta = params.delta
        self.decay = 1.0 - params.delta
        self.r_min, self.f_min, self.m_min = thresholds
        self.theta = params.theta
        self.toggles = toggles
        self.erased = erased
        self.max_len = max_len
        self.observer = observer


class _Acc:
    """Per-subtree accumulator; merged across subtrees in root order."""

    __slots__ = ("emitted", "out", "mset", "candidates", "visited", "prune")

    def __init__(self, maximal: bool):
        self.emitted = 0
        self.out: list[tuple[Pattern, PatternStats]] | None = None if maximal else []
        self.mset: MaximalSet | None = MaximalSet() if maximal else None
        self.candidates = 0
        self.visited = 0
        self.prune = PruneCounters()

    def emit(self, pattern: Pattern, stats: PatternStats) -> None:
        self.emitted += 1
        if self.mset is not None:
            if self.mset.judge(pattern):
                self.mset.insert(pattern, stats)
        else:
            self.out.append((pattern, stats))


def _evaluate(elements: list[ChainElement], ctx: _Ctx) -> tuple[PatternStats, int, dict[int, int]]:
    """Stats plus the extension bound, total and per sequence, in one pass."""
    decay = ctx.decay
    seqs = ctx.idx.seqs
    r = 0.0
    f = 0
    m = 0
    em_total = 0
    em_map: dict[int, int] = {}
    for sid, group in _groups(elements):
        best_ts = -1
        best_m = -1
        best_em = -1
        for e in group:
            am = max(e.entries.values())
            if am > best_m:
                best_m = am
            if am + e.rm > best_em:
                best_em = am + e.rm
            ts = max(e.entries)
            if ts > best_ts:
                best_ts = ts
        r += decay ** (seqs[sid - 1].ct - best_ts)
        f += 1
        m += best_m
        em_total += best_em
        em_map[sid] = best_em
    return PatternStats(r, f, m), em_total, em_map


def _initial_elements(idx: DatabaseIndex, erased: set[str]) -> dict[str, list[ChainElement]]:
    out: dict[str, list[ChainElement]] = {}
    for sd in idx.seqs:
        for q0, row in enumerate(sd.rows):
            t = sd.ts[q0]
            for item, money, suffix in row:
                if item in erased:
                    continue
                out.setdefault(item, []).append(ChainElement(sd.sid, q0 + 1, suffix, {t: money}))
    return out


def _expand(pattern: Pattern, elements: list[ChainElement], em_map: dict[int, int],
            ctx: _Ctx, acc: _Acc) -> list[tuple[str, str, list[ChainElement], int]]:
    """Build every extension child of a node in one scan of its chain.

    Returns (kind, item, child elements, pm_value) with itemset-growing
    children first, each list in ascending item order, already filtered by
    the prefix-monetary bound and the time-span window.
    """
    last = pattern.last_item()
    theta = ctx.theta
    erased = ctx.erased
    seqs = ctx.idx.seqs
    i_children: dict[str, list[ChainElement]] = {}
    s_children: dict[str, list[ChainElement]] = {}
    i_pm: dict[str, int] = {}
    s_pm: dict[str, int] = {}
    theta_blocked: set[str] = set()

    for sid, group in _groups(elements):
        sd = seqs[sid - 1]
        em_sid = em_map[sid]
        seen_i: set[str] = set()
        seen_s: set[str] = set()

        for e in group:
            row = sd.rows[e.tid - 1]
            jlast = sd.pos[e.tid - 1][last]
            for j in range(jlast + 1, len(row)):
                item, money, suffix = row[j]
                if item in erased:
                    continue
                entries = {ts: am + money for ts, am in e.entries.items()}
                i_children.setdefault(item, []).append(ChainElement(sid, e.tid, suffix, entries))
                if item not in seen_i:
                    seen_i.add(item)
                    i_pm[item] = i_pm.get(item, 0) + em_sid

        merged: dict[int, int] = {}
        ptr = 0
        n_group = len(group)
        for q in range(group[0].tid + 1, sd.n + 1):
            while ptr < n_group and group[ptr].tid < q:
                for ts, am in group[ptr].entries.items():
                    if merged.get(ts, -1) < am:
                        merged[ts] = am
                ptr += 1
            row = sd.rows[q - 1]
            if theta is None:
                surviving = merged
            else:
                tq = sd.ts[q - 1]
                surviving = {ts: am for ts, am in merged.items() if ts - tq <= theta}
                if not surviving:
                    for item, _, _ in row:
                        if item not in erased:
                            theta_blocked.add(item)
                    continue
            for item, money, suffix in row:
                if item in erased:
                    continue
                entries = {ts: am + money for ts, am in surviving.items()}
                s_children.setdefault(item, []).append(ChainElement(sid, q, suffix, entries))
                if item not in seen_s:
                    seen_s.add(item)
                    s_pm[item] = s_pm.get(item, 0) + em_sid

    acc.prune.theta += len(theta_blocked - s_children.keys())

    out: list[tuple[str, str, list[ChainElement], int]] = []
    use_pm = ctx.toggles.use_pm
    for item in sorted(i_children):
        pm_val = i_pm[item]
        if use_pm and pm_val < ctx.m_min:
            acc.prune.pm += 1
            continue
        out.append(("i", item, i_children[item], pm_val))
    for item in sorted(s_children):
        pm_val = s_pm[item]
        if use_pm and pm_val < ctx.m_min:
            acc.prune.pm += 1
            continue
        out.append(("s", item, s_children[item], pm_val))
    return out


def _recurse(pattern: Pattern, elements: list[ChainElement], em_total: int,
             em_map: dict[int, int], length: int, ctx: _Ctx, acc: _Acc) -> None:
    acc.visited += 1
    for kind, item, c_elems, pm_val in _expand(pattern, elements, em_map, ctx, acc):
        acc.candidates += 1
        child = pattern.extend_i(item) if kind == "i" else pattern.extend_s(item)
        stats, c_em_total, c_em_map = _evaluate(c_elems, ctx)
        if ctx.observer is not None:
            ctx.observer(CandidateEvent(pattern, child, kind, stats, c_em_total, pm_val, em_total))
        if stats.recency < ctx.r_min or stats.frequency < ctx.f_min:
            continue
        if stats.monetary >= ctx.m_min:
            acc.emit(child, stats)
        if ctx.toggles.use_em and c_em_total < ctx.m_min:
            acc.prune.em += 1
            continue
        if ctx.max_len is None or length + 1 < ctx.max_len:
            _recurse(child, c_elems, c_em_total, c_em_map, length + 1, ctx, acc)


def collect_extension_items(chain: Chain, db, theta: int | None = None,
                            erased: frozenset = frozenset()) -> tuple[list[ItemId], list[ItemId]]:
    """Candidate extension items of a chain, deduplicated and ascending.

    The first list holds items co-located after the matched item in an
    ending itemset; the second holds items occurring after some ending
    position within the time-span window. Bound-based filtering happens
    later, inside the recursion, where thresholds are known.
    """
    idx = prepare(db) if isinstance(db, MTDatabase) else db
    last = chain.pattern.last_item()
    ilist: set[str] = set()
    slist: set[str] = set()
    for sid, group in _groups(chain.elements):
        sd = idx.seqs[sid - 1]
        for e in group:
            row = sd.rows[e.tid - 1]
            for j in range(sd.pos[e.tid - 1][last] + 1, len(row)):
                if row[j][0] not in erased:
                    ilist.add(row[j][0])
        min_ts = None
        ptr = 0
        for q in range(group[0].tid + 1, sd.n + 1):
            while ptr < len(group) and group[ptr].tid < q:
                lo = min(group[ptr].entries)
                if min_ts is None or lo < min_ts:
                    min_ts = lo
                ptr += 1
            if theta is not None and min_ts - sd.ts[q - 1] > theta:
                continue
            for item, _, _ in sd.rows[q - 1]:
                if item not in erased:
                    slist.add(item)
    return sorted(ilist), sorted(slist)


def _merge_results(accs: list[_Acc], maximal: bool) -> tuple[list, int, PruneCounters, int, int]:
    candidates = 0
    visited = 0
    emitted = 0
    prune = PruneCounters()
    if maximal:
        merged = MaximalSet()
        for acc in accs:
            candidates += acc.candidates
            visited += acc.visited
            emitted += acc.emitted
            prune.add(acc.prune)
            for p, s in acc.mset.items():
                if merged.judge(p):
                    merged.insert(p, s)
        patterns = merged.items()
    else:
        patterns = []
        for acc in accs:
            candidates += acc.candidates
            visited += acc.visited
            emitted += acc.emitted
            prune.add(acc.prune)
            patterns.extend(acc.out)
    patterns.sort(key=lambda r: r[0].sort_key())
    return patterns, emitted, prune, candidates, visited


def _mine(db: MTDatabase, params: Params, toggles: StrategyToggles | None,
          max_len: int | None, threads: int, observer: Observer | None,
          maximal: bool) -> MiningResult:
    t0 = time.perf_counter()
    params.validate()
    if max_len is not None and max_len < 1:
        raise ValueError(f"max_len must be >= 1 or None, got {max_len}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    toggles = toggles if toggles is not None else ALL_ON
    idx = prepare(db) if not isinstance(db, DatabaseIndex) else db
    thresholds = params.thresholds(idx.db)
    _, f_min, m_min = thresholds

    erased: set[str] = set()
    prune0 = PruneCounters()
    if toggles.use_swm:
        for item in idx.items:
            if idx.item_freq[item] < f_min or idx.item_swm[item] < m_min:
                erased.add(item)
        prune0.swm = len(erased)

    ctx = _Ctx(idx, params, thresholds, toggles, erased, max_len, observer)
    root_elements = _initial_elements(idx, erased)
    roots = sorted(root_elements)

    def run_root(item: str) -> _Acc:
        acc = _Acc(maximal)
        elements = root_elements[item]
        acc.candidates += 1
        pattern = Pattern.single(item)
        stats, em_total, em_map = _evaluate(elements, ctx)
        if observer is not None:
            observer(CandidateEvent(None, pattern, "root", stats, em_total, None, None))
        if stats.recency < ctx.r_min or stats.frequency < ctx.f_min:
            return acc
        if stats.monetary >= ctx.m_min:
            acc.emit(pattern, stats)
        if max_len is None or max_len > 1:
            _recurse(pattern, elements, em_total, em_map, 1, ctx, acc)
        return acc

    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            accs = list(pool.map(run_root, roots))
    else:
        accs = [run_root(item) for item in roots]

    patterns, emitted, prune, candidates, visited = _merge_results(accs, maximal)
    prune.swm = prune0.swm
    compression = None
    if maximal:
        compression = 1.0 - len(patterns) / emitted if emitted else 0.0
    return MiningResult(
        patterns=patterns,
        candidate_count=candidates,
        visited_nodes=visited,
        elapsed=time.perf_counter() - t0,
        prune=prune,
        rfm_count=emitted,
        compression_rate=compression,
    )


def mine(db: MTDatabase, params: Params, toggles: StrategyToggles | None = None,
         max_len: int | None = None, threads: int = 1,
         observer: Observer | None = None) -> MiningResult:
    """Mine every compact pattern clearing the R/F/M thresholds.

    ``max_len`` caps total pattern length, for parity with the reference
    enumerator in tests; production runs leave it unbounded. With
    ``threads > 1`` first-level subtrees run concurrently; the result is
    identical to the sequential run.
    """
    return _mine(db, params, toggles, max_len, threads, observer, maximal=False)


def mine_maximal(db: MTDatabase, params: Params, toggles: StrategyToggles | None = None,
                 max_len: int | None = None, threads: int = 1,
                 observer: Observer | None = None) -> MiningResult:
    """Like :func:`mine` but keeps only patterns with no qualifying super-sequence.

    Every emission passes through the maximal judge; ``rfm_count`` still
    counts all emissions so the compression rate can be reported.
    """
    return _mine(db, params, toggles, max_len, threads, observer, maximal=True)
