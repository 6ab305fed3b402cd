"""Command-line front end.

Subcommands: mine, mine-max, oracle, oracle-max, gen, stats, bench.
Exit codes: 0 success, 1 usage error, 2 data error, 3 enumeration budget
refusal. '-' names stdin/stdout for --input/--output.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import datagen, io as dbio, miner, oracle
from .model import MTDatabase, Params


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _theta(text: str) -> int | None:
    if text == "inf":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"theta must be an integer or 'inf', got {text!r}")
    return value


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def _theta_list(text: str) -> list[int | None]:
    return [_theta(t) for t in text.split(",") if t]


def _add_mining_params(p: _Parser) -> None:
    p.add_argument("--delta", type=float, default=0.0, help="recency decay rate in [0,1)")
    p.add_argument("--alpha", type=float, default=0.0, help="absolute minimum recency")
    p.add_argument("--beta", type=float, default=0.0, help="relative minimum frequency")
    p.add_argument("--gamma", type=float, default=0.0, help="relative minimum monetary")
    p.add_argument("--theta", type=_theta, default=None, help="max time-span length or 'inf'")


def _add_io(p: _Parser, need_input=True) -> None:
    if need_input:
        p.add_argument("--input", required=True, help="database file, or '-' for stdin")
    p.add_argument("--output", default="-", help="output file, or '-' for stdout")


def build_parser() -> _Parser:
    top = _Parser(prog="rfmseq", description=__doc__)
    sub = top.add_subparsers(dest="command", metavar="command")

    for name in ("mine", "mine-max"):
        p = sub.add_parser(name, help="mine patterns" if name == "mine" else "mine maximal patterns")
        _add_io(p)
        _add_mining_params(p)
        p.add_argument("--maximal", action="store_true", help="keep only maximal patterns")
        p.add_argument("--max-len", type=int, default=None, help="cap on total pattern length")
        p.add_argument("--threads", type=int, default=1, help="first-level subtree parallelism")
        p.add_argument("--no-swm", action="store_true", help="disable sequence-weighted pruning")
        p.add_argument("--no-em", action="store_true", help="disable extension-bound pruning")
        p.add_argument("--no-pm", action="store_true", help="disable prefix-bound pruning")
        p.add_argument("--stats-out", default=None, help="write run statistics here ('-' = stdout)")

    for name in ("oracle", "oracle-max"):
        p = sub.add_parser(name, help="exhaustive reference enumeration")
        _add_io(p)
        _add_mining_params(p)
        p.add_argument("--maximal", action="store_true", help="keep only maximal patterns")
        p.add_argument("--max-len", type=int, default=8, help="cap on total pattern length")
        p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                       help="refuse enumerations larger than this")

    p = sub.add_parser("gen", help="generate a synthetic database")
    _add_io(p, need_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sequences", type=int, required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--avg-itemsets", type=float, default=4.0)
    p.add_argument("--avg-items", type=float, default=1.5)
    p.add_argument("--money-min", type=int, default=1)
    p.add_argument("--money-max", type=int, default=50)
    p.add_argument("--ts-min", type=int, default=0)
    p.add_argument("--ts-max", type=int, default=100)

    p = sub.add_parser("stats", help="dataset statistics as key=value lines")
    _add_io(p)

    p = sub.add_parser("bench", help="mine across a parameter grid, one row per cell")
    _add_io(p)
    _add_mining_params(p)
    p.add_argument("--gammas", type=_float_list, required=True, help="comma-separated gamma values")
    p.add_argument("--thetas", type=_theta_list, required=True, help="comma-separated theta values")
    p.add_argument("--betas", type=_float_list, default=None, help="optional beta values")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-swm", action="store_true")
    p.add_argument("--no-em", action="store_true")
    p.add_argument("--no-pm", action="store_true")

    return top


def _read_db(path: str) -> MTDatabase:
    if path == "-":
        return dbio.parse_mt_database(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fp:
        return dbio.parse_mt_database(fp.read())


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fp:
            fp.write(text)


def _params(args) -> Params:
    return Params(delta=args.delta, alpha=args.alpha, beta=args.beta,
                  gamma=args.gamma, theta=args.theta)


def _run_stats_text(res: miner.MiningResult) -> str:
    lines = [
        f"candidates={res.candidate_count}",
        f"patterns={len(res.patterns)}",
        f"prune_swm={res.prune.swm}",
        f"prune_em={res.prune.em}",
        f"prune_pm={res.prune.pm}",
        f"prune_theta={res.prune.theta}",
        f"elapsed_ms={int(res.elapsed * 1000)}",
    ]
    if res.compression_rate is not None:
        lines.append(f"compression_rate={res.compression_rate:.4f}")
    return "".join(line + "\n" for line in lines)


def _cmd_mine(args) -> int:
    db = _read_db(args.input)
    params = _params(args)
    toggles = miner.StrategyToggles(
        use_swm=not args.no_swm, use_em=not args.no_em, use_pm=not args.no_pm
    )
    maximal = args.maximal or args.command == "mine-max"
    fn = miner.mine_maximal if maximal else miner.mine
    res = fn(db, params, toggles, max_len=args.max_len, threads=args.threads)
    _write(args.output, dbio.serialize_result(res.patterns))
    stats_text = _run_stats_text(res)
    if args.stats_out:
        _write(args.stats_out, stats_text)
    else:
        sys.stderr.write(stats_text)
    return 0


def _cmd_oracle(args) -> int:
    db = _read_db(args.input)
    params = _params(args)
    maximal = args.maximal or args.command == "oracle-max"
    fn = oracle.oracle_mine_maximal if maximal else oracle.oracle_mine
    results = fn(db, params, max_len=args.max_len, budget=args.budget)
    _write(args.output, dbio.serialize_result(results))
    return 0


def _cmd_gen(args) -> int:
    gp = datagen.GenParams(
        sequence_count=args.sequences,
        distinct_items=args.items,
        avg_itemsets=args.avg_itemsets,
        avg_items=args.avg_items,
        money_range=(args.money_min, args.money_max),
        ts_range=(args.ts_min, args.ts_max),
        seed=args.seed,
    )
    db = datagen.generate(gp)
    _write(args.output, dbio.serialize_mt_database(db, header=datagen.header_lines(gp)))
    return 0


def _cmd_stats(args) -> int:
    db = _read_db(args.input)
    _write(args.output, dbio.format_stats(dbio.db_stats(db)))
    return 0


def _cmd_bench(args) -> int:
    db = _read_db(args.input)
    toggles = miner.StrategyToggles(
        use_swm=not args.no_swm, use_em=not args.no_em, use_pm=not args.no_pm
    )
    betas = args.betas if args.betas is not None else [args.beta]
    rows = []
    for beta in betas:
        for gamma in args.gammas:
            for theta in args.thetas:
                params = Params(delta=args.delta, alpha=args.alpha, beta=beta,
                                gamma=gamma, theta=theta)
                t0 = time.perf_counter()
                res = miner.mine(db, params, toggles, max_len=args.max_len,
                                 threads=args.threads)
                elapsed = time.perf_counter() - t0
                rows.append((beta, gamma, theta, elapsed, res.candidate_count, len(res.patterns)))
    with_beta = args.betas is not None
    head = ["beta"] if with_beta else []
    head += ["gamma", "theta", "runtime_s", "cand", "rfms"]
    table = [head]
    for beta, gamma, theta, elapsed, cand, nrfm in rows:
        cells = [f"{beta:g}"] if with_beta else []
        cells += [f"{gamma:g}", "inf" if theta is None else str(theta),
                  f"{elapsed:.3f}", str(cand), str(nrfm)]
        table.append(cells)
    widths = [max(len(r[c]) for r in table) for c in range(len(head))]
    text = "".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + "\n" for row in table
    )
    _write(args.output, text)
    return 0


_COMMANDS = {
    "mine": _cmd_mine,
    "mine-max": _cmd_mine,
    "oracle": _cmd_oracle,
    "oracle-max": _cmd_oracle,
    "gen": _cmd_gen,
    "stats": _cmd_stats,
    "bench": _cmd_bench,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required (mine, mine-max, oracle, oracle-max, gen, stats, bench)")
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse exits directly for -h/--help
        return int(exc.code or 0)
    except UsageError as exc:
        sys.stderr.write(f"rfmseq: usage error: {exc}\n")
        return 1
    except ValueError as exc:
        # bad parameter values (delta >= 1 etc.) are usage errors too
        if isinstance(exc, (dbio.ParseError, dbio.ValidationError)):
            sys.stderr.write(f"rfmseq: data error: {exc}\n")
            return 2
        sys.stderr.write(f"rfmseq: usage error: {exc}\n")
        return 1
    except oracle.OracleBudgetError as exc:
        sys.stderr.write(f"rfmseq: budget refused: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"rfmseq: data error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
