"""Per-pattern occurrence chains with fast R/F/M evaluation and monetary bounds.

A chain records, for each (sequence, ending position) where the pattern has
at least one admissible instance, the distinct instance start timestamps
with the best prefix monetary value per start (``entries``) and the total
monetary value of everything after the matched ending item (``rm``).

Keeping one entry per distinct start timestamp, instead of a single most
recent start, is what lets one structure serve both recency (which wants
the largest start) and the time-span constraint (which may only admit a
smaller start); when starts are unique the two layouts coincide.

The bounds:

* ``swm``  - sum of whole-sequence monetary over sequences containing an
  item; bounds the monetary value of every pattern containing that item.
* ``em``   - per sequence, max over ending positions of (best prefix
  monetary + remaining monetary), summed; bounds every descendant reachable
  by extension.
* ``pm``   - the parent's per-sequence ``em`` contribution restricted to
  sequences where the child occurs; bounds the child and its subtree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ItemId, MTDatabase, Pattern, PatternStats


class _SeqData:
    """Flattened per-sequence arrays for O(1) lookups during extension."""

    __slots__ = ("sid", "n", "ct", "ts", "rows", "pos", "total")

    def __init__(self, seq):
        self.sid = seq.sid
        self.n = len(seq.itemsets)
        self.ct = seq.ct
        self.ts = [s.timestamp for s in seq.itemsets]
        self.total = seq.total_monetary
        running = 0
        # walk backwards so each item knows the monetary value remaining after it
        rows: list[list[tuple[str, int, int]]] = [[] for _ in range(self.n)]
        for k in range(self.n - 1, -1, -1):
            pairs = seq.itemsets[k].items
            row: list[tuple[str, int, int]] = [None] * len(pairs)  # type: ignore[list-item]
            for j in range(len(pairs) - 1, -1, -1):
                item, money = pairs[j]
                row[j] = (item, money, running)
                running += money
            rows[k] = row
        self.rows = rows
        self.pos = [{item: j for j, (item, _, _) in enumerate(row)} for row in rows]


class DatabaseIndex:
    """Read-only view of a database prepared for chain construction."""

    __slots__ = ("db", "seqs", "items", "item_freq", "item_swm")

    def __init__(self, db: MTDatabase):
        self.db = db
        self.seqs = [_SeqData(seq) for seq in db.sequences]
        freq: dict[str, int] = {}
        swm: dict[str, int] = {}
        for seq, sd in zip(db.sequences, self.seqs):
            seen = set()
            for iset in seq.itemsets:
                seen.update(iset.item_ids())
            for item in seen:
                freq[item] = freq.get(item, 0) + 1
                swm[item] = swm.get(item, 0) + sd.total
        self.item_freq = freq
        self.item_swm = swm
        self.items = sorted(freq)


def prepare(db: MTDatabase) -> DatabaseIndex:
    return DatabaseIndex(db)


def _as_index(db) -> DatabaseIndex:
    return db if isinstance(db, DatabaseIndex) else DatabaseIndex(db)


@dataclass
class ChainElement:
    """One occurrence ending position.

    entries maps instance start timestamp -> best prefix monetary value
    among admissible instances with that start ending here. rm is the
    monetary value of everything strictly after the matched ending item.
    """

    sid: int
    tid: int
    rm: int
    entries: dict[int, int]


@dataclass
class Chain:
    pattern: Pattern
    elements: list[ChainElement] = field(default_factory=list)


@dataclass
class TreeNode:
    pattern: Pattern
    chain: Chain


def _groups(elements):
    """Yield (sid, slice of elements) runs; elements are (sid, tid) ordered."""
    i, n = 0, len(elements)
    while i < n:
        j = i
        sid = elements[i].sid
        while j < n and elements[j].sid == sid:
            j += 1
        yield sid, elements[i:j]
        i = j


def build_initial_chains(db, theta: int | None = None, skip: frozenset = frozenset()) -> dict[ItemId, Chain]:
    """A chain per distinct item, one element per occurrence position.

    Single-item instances always have time span 0, so theta never filters
    here; it is accepted for signature symmetry with the extension ops.
    """
    idx = _as_index(db)
    elements: dict[str, list[ChainElement]] = {}
    for sd in idx.seqs:
        for q0, row in enumerate(sd.rows):
            t = sd.ts[q0]
            for item, money, suffix in row:
                if item in skip:
                    continue
                elements.setdefault(item, []).append(
                    ChainElement(sd.sid, q0 + 1, suffix, {t: money})
                )
    return {item: Chain(Pattern.single(item), elems) for item, elems in elements.items()}


def i_extend(node: TreeNode, item: ItemId, db, theta: int | None = None) -> Chain:
    """Chain for the pattern grown by adding ``item`` to its last itemset.

    ``item`` must be strictly greater than the pattern's current last item;
    anything else is a caller bug.
    """
    last = node.pattern.last_item()
    if item <= last:
        raise ValueError(f"i-extension item {item!r} must be greater than {last!r}")
    idx = _as_index(db)
    out: list[ChainElement] = []
    for e in node.chain.elements:
        sd = idx.seqs[e.sid - 1]
        j = sd.pos[e.tid - 1].get(item)
        if j is None:
            continue
        _, money, suffix = sd.rows[e.tid - 1][j]
        t_end = sd.ts[e.tid - 1]
        if theta is None:
            entries = {ts: am + money for ts, am in e.entries.items()}
        else:
            entries = {ts: am + money for ts, am in e.entries.items() if ts - t_end <= theta}
        if entries:
            out.append(ChainElement(e.sid, e.tid, suffix, entries))
    return Chain(node.pattern.extend_i(item), out)


def s_extend(node: TreeNode, item: ItemId, db, theta: int | None = None) -> Chain:
    """Chain for the pattern grown by appending ``{item}`` as a new itemset.

    An element is produced for every occurrence of ``item`` strictly after
    some parent ending position; each surviving entry keeps the parent's
    start timestamp with the best reachable prefix monetary value plus the
    item's own monetary value.
    """
    idx = _as_index(db)
    out: list[ChainElement] = []
    for sid, group in _groups(node.chain.elements):
        sd = idx.seqs[sid - 1]
        merged: dict[int, int] = {}
        ptr = 0
        for q in range(group[0].tid + 1, sd.n + 1):
            while ptr < len(group) and group[ptr].tid < q:
                for ts, am in group[ptr].entries.items():
                    if merged.get(ts, -1) < am:
                        merged[ts] = am
                ptr += 1
            j = sd.pos[q - 1].get(item)
            if j is None:
                continue
            _, money, suffix = sd.rows[q - 1][j]
            tq = sd.ts[q - 1]
            if theta is None:
                entries = {ts: am + money for ts, am in merged.items()}
            else:
                entries = {ts: am + money for ts, am in merged.items() if ts - tq <= theta}
            if entries:
                out.append(ChainElement(sid, q, suffix, entries))
    return Chain(node.pattern.extend_s(item), out)


def build_chain(db, pattern: Pattern, theta: int | None = None) -> Chain:
    """Compose extensions to materialize the chain of an arbitrary pattern."""
    idx = _as_index(db)
    first = pattern.itemsets[0]
    chain = build_initial_chains(idx, theta).get(first[0], Chain(Pattern.single(first[0]), []))
    node = TreeNode(chain.pattern, chain)
    for item in first[1:]:
        chain = i_extend(node, item, idx, theta)
        node = TreeNode(chain.pattern, chain)
    for iset in pattern.itemsets[1:]:
        chain = s_extend(node, iset[0], idx, theta)
        node = TreeNode(chain.pattern, chain)
        for item in iset[1:]:
            chain = i_extend(node, item, idx, theta)
            node = TreeNode(chain.pattern, chain)
    return chain


def chain_stats(chain: Chain, db, delta: float) -> PatternStats:
    """R/F/M read off the chain; equals the definition-level measures."""
    idx = _as_index(db)
    decay = 1.0 - delta
    r = 0.0
    f = 0
    m = 0
    for sid, group in _groups(chain.elements):
        ct = idx.seqs[sid - 1].ct
        best_ts = max(ts for e in group for ts in e.entries)
        r += decay ** (ct - best_ts)
        m += max(max(e.entries.values()) for e in group)
        f += 1
    return PatternStats(r, f, m)


def swm(item: ItemId, db) -> int:
    """Total monetary value of the sequences containing ``item``."""
    return _as_index(db).item_swm.get(item, 0)


def em_by_sid(chain: Chain, db) -> dict[int, int]:
    out: dict[int, int] = {}
    for sid, group in _groups(chain.elements):
        out[sid] = max(max(e.entries.values()) + e.rm for e in group)
    return out


def em(chain: Chain, db) -> int:
    """Extension monetary bound: per-sequence max of (prefix + remaining), summed."""
    return sum(em_by_sid(chain, db).values())


def pm(parent_chain: Chain, child_chain: Chain, db) -> int:
    """Parent's extension bound restricted to sequences where the child occurs."""
    parent_em = em_by_sid(parent_chain, db)
    return sum(parent_em[sid] for sid, _ in _groups(child_chain.elements))


def dump(chain: Chain) -> str:
    """Debug text, one element per line, entries ascending by start timestamp."""
    lines = []
    for e in chain.elements:
        ent = ",".join(f"({ts},{am})" for ts, am in sorted(e.entries.items()))
        lines.append(f"sid={e.sid} tid={e.tid} rm={e.rm} entries=[{ent}]")
    return "\n".join(lines)
