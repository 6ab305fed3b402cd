#!/usr/bin/env python3
"""Candidate-count trends across the monetary-threshold / time-span grid.

Generates a synthetic database (or reads one), mines every (gamma, theta)
cell, and prints runtime, candidate count, and result count per cell.
Candidates fall as gamma rises and grow as theta widens.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rfmseq import GenParams, Params, generate, mine, parse_mt_database


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", help="database file; omit to generate one")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--sequences", type=int, default=2000)
    ap.add_argument("--items", type=int, default=200)
    ap.add_argument("--delta", type=float, default=0.01)
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--beta", type=float, default=0.01)
    ap.add_argument("--gammas", default="0.0005,0.002,0.008")
    ap.add_argument("--thetas", default="10,25,60")
    args = ap.parse_args()

    if args.input:
        db = parse_mt_database(Path(args.input).read_text(encoding="utf-8"))
    else:
        gp = GenParams(args.sequences, args.items, 5.0, 2.0, (1, 20), (0, 60), seed=args.seed)
        db = generate(gp)
        print(f"# generated: {args.sequences} sequences, {args.items} items, seed {args.seed}")

    gammas = [float(g) for g in args.gammas.split(",")]
    thetas = [None if t == "inf" else int(t) for t in args.thetas.split(",")]

    print(f"{'gamma':>10} {'theta':>6} {'runtime_s':>10} {'cand':>10} {'rfms':>8}")
    for gamma in gammas:
        for theta in thetas:
            params = Params(args.delta, args.alpha, args.beta, gamma, theta)
            t0 = time.perf_counter()
            res = mine(db, params)
            elapsed = time.perf_counter() - t0
            t_label = "inf" if theta is None else theta
            print(f"{gamma:>10g} {t_label:>6} {elapsed:>10.3f} "
                  f"{res.candidate_count:>10} {len(res.patterns):>8}")


if __name__ == "__main__":
    main()
