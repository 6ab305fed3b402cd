#!/usr/bin/env python3
"""Result compression from maximal-pattern mining.

Builds a database of replicated generator templates (shared sub-sequences
are what give maximal filtering leverage), mines the full pattern set and
the maximal set, and reports the compression rate.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rfmseq import GenParams, MTDatabase, MTSequence, Params, generate, mine_maximal


def replicated(templates: MTDatabase, copies: int) -> MTDatabase:
    seqs = []
    sid = 0
    for t in templates.sequences:
        for _ in range(copies):
            sid += 1
            seqs.append(MTSequence(sid, t.itemsets))
    return MTDatabase(tuple(seqs))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=31)
    ap.add_argument("--templates", type=int, default=125)
    ap.add_argument("--copies", type=int, default=40)
    ap.add_argument("--items", type=int, default=30)
    ap.add_argument("--beta", type=float, default=0.006)
    ap.add_argument("--delta", type=float, default=0.005)
    args = ap.parse_args()

    base = generate(GenParams(args.templates, args.items, 2.5, 1.4, (1, 20), (0, 50),
                              seed=args.seed))
    db = replicated(base, args.copies)
    print(f"# {db.sequence_count} sequences ({args.templates} templates x {args.copies} copies)")

    t0 = time.perf_counter()
    res = mine_maximal(db, Params(args.delta, 0.0, args.beta, 0.0, None))
    elapsed = time.perf_counter() - t0
    print(f"patterns          {res.rfm_count}")
    print(f"maximal patterns  {len(res.patterns)}")
    print(f"compression_rate  {res.compression_rate:.4f}")
    print(f"runtime_s         {elapsed:.2f}")


if __name__ == "__main__":
    main()
