"""Text formats: database files, result files, and dataset statistics.

Database file grammar (UTF-8, LF line endings, one sequence per line):

    line    := itemset+ "-2"
    itemset := "<TS>" item+ "-1"
    item    := ITEMID ":" MONEY

Tokens are space separated; TS and MONEY are non-negative integers. Lines
starting with '#' are comments and are skipped, as are blank lines.

Result file format, one pattern per line in pattern order:

    {i1 i2}{i3} #R:<recency, 4 decimals> #F:<int> #M:<int>
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable

from .model import (
    MTDatabase,
    MTItemset,
    MTSequence,
    Pattern,
    PatternStats,
    validate_database,
)

_TS_RE = re.compile(r"<(\d+)>\Z")
_ITEM_RE = re.compile(r"([^:\s]+):(\d+)\Z")
_TOKEN_RE = re.compile(r"\S+")


class ParseError(ValueError):
    """Malformed token or structure, located by (line, column), both 1-based."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ValueError):
    """Structurally parsed input whose content breaks a database invariant."""

    def __init__(self, violations):
        self.violations = violations
        head = "; ".join(
            f"sid {v.sid} itemset {v.itemset_index}: {v.reason}" for v in violations[:5]
        )
        more = "" if len(violations) <= 5 else f" (+{len(violations) - 5} more)"
        super().__init__(f"invalid database: {head}{more}")


def parse_mt_database(source: str | IO[str]) -> MTDatabase:
    """Parse a database file; raises ParseError or ValidationError."""
    lines = source.splitlines() if isinstance(source, str) else source
    sequences: list[MTSequence] = []
    sid = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        sid += 1
        sequences.append(_parse_line(line, lineno, sid))
    db = MTDatabase(tuple(sequences))
    violations = validate_database(db)
    if violations:
        raise ValidationError(violations)
    return db


def _parse_line(line: str, lineno: int, sid: int) -> MTSequence:
    tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
    end_col = len(line) + 1
    itemsets: list[MTItemset] = []
    i = 0

    def fail(col, msg):
        raise ParseError(lineno, col, msg)

    while True:
        if i >= len(tokens):
            fail(end_col, "expected '<TS>' or '-2' at end of line")
        tok, col = tokens[i]
        if tok == "-2":
            if i != len(tokens) - 1:
                fail(tokens[i + 1][1], "tokens after '-2'")
            if not itemsets:
                fail(col, "sequence has no itemsets")
            return MTSequence(sid, tuple(itemsets))
        m = _TS_RE.match(tok)
        if not m:
            fail(col, f"expected '<TS>' or '-2', got {tok!r}")
        ts = int(m.group(1))
        i += 1
        items: list[tuple[str, int]] = []
        while True:
            if i >= len(tokens):
                fail(end_col, "unterminated itemset: expected 'item:money' or '-1'")
            tok, col = tokens[i]
            if tok == "-1":
                if not items:
                    fail(col, "empty itemset")
                itemsets.append(MTItemset(ts, tuple(items)))
                i += 1
                break
            im = _ITEM_RE.match(tok)
            if not im:
                fail(col, f"expected 'item:money' or '-1', got {tok!r}")
            items.append((im.group(1), int(im.group(2))))
            i += 1


def serialize_mt_database(db: MTDatabase, header: Iterable[str] = ()) -> str:
    """Inverse writer for parse_mt_database; ``header`` lines become comments."""
    out = [f"# {h}" for h in header]
    for seq in db.sequences:
        parts = []
        for iset in seq.itemsets:
            parts.append(f"<{iset.timestamp}>")
            parts.extend(f"{item}:{money}" for item, money in iset.items)
            parts.append("-1")
        parts.append("-2")
        out.append(" ".join(parts))
    return "".join(line + "\n" for line in out)


def serialize_result(results: Iterable[tuple[Pattern, PatternStats]]) -> str:
    """One line per pattern in pattern order; recency uses 4 decimals (half-even)."""
    rows = sorted(results, key=lambda r: r[0].sort_key())
    return "".join(
        f"{p.render()} #R:{s.recency:.4f} #F:{s.frequency} #M:{s.monetary}\n"
        for p, s in rows
    )


@dataclass(frozen=True)
class DatasetStats:
    sequence_count: int
    distinct_items: int
    max_seq_len: int
    avg_seq_len: float
    avg_itemsets: float
    avg_items_per_itemset: float
    total_monetary: int


def db_stats(db: MTDatabase) -> DatasetStats:
    n = db.sequence_count
    if n == 0:
        return DatasetStats(0, 0, 0, 0.0, 0.0, 0.0, 0)
    items: set[str] = set()
    total_items = 0
    total_itemsets = 0
    max_len = 0
    for seq in db.sequences:
        seq_len = seq.length()
        total_items += seq_len
        total_itemsets += len(seq.itemsets)
        max_len = max(max_len, seq_len)
        for iset in seq.itemsets:
            items.update(iset.item_ids())
    return DatasetStats(
        sequence_count=n,
        distinct_items=len(items),
        max_seq_len=max_len,
        avg_seq_len=total_items / n,
        avg_itemsets=total_itemsets / n,
        avg_items_per_itemset=total_items / total_itemsets if total_itemsets else 0.0,
        total_monetary=db.total_monetary,
    )


def format_stats(stats: DatasetStats) -> str:
    """key=value lines; averages carry 4 decimals."""
    return (
        f"sequences={stats.sequence_count}\n"
        f"distinct_items={stats.distinct_items}\n"
        f"max_seq_len={stats.max_seq_len}\n"
        f"avg_seq_len={stats.avg_seq_len:.4f}\n"
        f"avg_itemsets={stats.avg_itemsets:.4f}\n"
        f"avg_items_per_itemset={stats.avg_items_per_itemset:.4f}\n"
        f"total_monetary={stats.total_monetary}\n"
    )
