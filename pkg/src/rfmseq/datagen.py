"""Deterministic synthetic database generator.

Shapes follow summary statistics rather than any specific real-world
process: itemset counts and itemset sizes come from geometric draws around
the requested means, items are sampled without replacement and sorted,
monetary values and timestamps are uniform in their ranges, and timestamps
are sorted non-increasing per sequence.

The pseudo-random source is Python's Mersenne Twister; the algorithm
identifier and parameters go into the output file header so a database can
be regenerated. Byte equality across differently seeded RNG implementations
is not promised, only the same statistical shape.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import IO

from .io import serialize_mt_database
from .model import MTDatabase, MTItemset, MTSequence


@dataclass(frozen=True)
class GenParams:
    sequence_count: int
    distinct_items: int
    avg_itemsets: float
    avg_items: float
    money_range: tuple[int, int] = (1, 50)
    ts_range: tuple[int, int] = (0, 100)
    seed: int = 0

    def validate(self) -> None:
        if self.sequence_count < 1:
            raise ValueError("sequence_count must be >= 1")
        if self.distinct_items < 1:
            raise ValueError("distinct_items must be >= 1")
        if self.avg_itemsets < 1 or self.avg_items < 1:
            raise ValueError("averages must be >= 1")
        if self.avg_items > self.distinct_items:
            raise ValueError("avg_items cannot exceed distinct_items")
        if self.money_range[0] > self.money_range[1] or self.money_range[0] < 0:
            raise ValueError(f"bad money_range {self.money_range}")
        if self.ts_range[0] > self.ts_range[1] or self.ts_range[0] < 0:
            raise ValueError(f"bad ts_range {self.ts_range}")


def item_tokens(n: int) -> list[str]:
    """Zero-padded tokens so lexicographic item order matches numeric order."""
    width = len(str(n))
    return [f"i{k:0{width}d}" for k in range(1, n + 1)]


def _geometric(rng: random.Random, mean: float) -> int:
    """Geometric draw on {1, 2, ...} with the given mean."""
    if mean <= 1.0:
        return 1
    p = 1.0 / mean
    u = 1.0 - rng.random()  # (0, 1]
    return 1 + int(math.log(u) / math.log(1.0 - p))


def generate(gp: GenParams) -> MTDatabase:
    """Fully deterministic for a given seed; output always validates clean."""
    gp.validate()
    rng = random.Random(gp.seed)
    tokens = item_tokens(gp.distinct_items)
    mlo, mhi = gp.money_range
    tlo, thi = gp.ts_range
    seqs = []
    for sid in range(1, gp.sequence_count + 1):
        k = _geometric(rng, gp.avg_itemsets)
        stamps = sorted((rng.randint(tlo, thi) for _ in range(k)), reverse=True)
        itemsets = []
        for t in stamps:
            size = min(_geometric(rng, gp.avg_items), gp.distinct_items)
            chosen = sorted(rng.sample(tokens, size))
            itemsets.append(MTItemset(t, tuple((it, rng.randint(mlo, mhi)) for it in chosen)))
        seqs.append(MTSequence(sid, tuple(itemsets)))
    return MTDatabase(tuple(seqs))


def header_lines(gp: GenParams) -> list[str]:
    return [
        "generator=rfmseq-datagen rng=mt19937",
        (
            f"seed={gp.seed} sequences={gp.sequence_count} items={gp.distinct_items}"
            f" avg_itemsets={gp.avg_itemsets} avg_items={gp.avg_items}"
            f" money={gp.money_range[0]}..{gp.money_range[1]}"
            f" ts={gp.ts_range[0]}..{gp.ts_range[1]}"
        ),
    ]


def write_database(db: MTDatabase, fp: IO[str], gp: GenParams | None = None) -> None:
    fp.write(serialize_mt_database(db, header=header_lines(gp) if gp else ()))
