"""Command line entry point: ``slidewin gen | run | sweep``.

Exit codes: 0 all trials verified (or unchecked), 1 a trial failed,
2 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bench
from .bench import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, ConfigError
from .seqio import GEN_KINDS, GenSpec, SeqFormatError, generate, load_seq, save_seq


def _int_tuple(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_gen_options(p: argparse.ArgumentParser, kind_flag: str) -> None:
    p.add_argument(kind_flag, dest="kind", default="uniform", choices=GEN_KINDS)
    p.add_argument("--n", type=int, required=True, help="window length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symbol", type=int, default=1, help="all_equal: the repeated symbol")
    p.add_argument("--positions", type=_int_tuple, default=(),
                   help="planted_duplicate: two 0-based positions, e.g. 3,17")
    p.add_argument("--payload", type=_int_tuple, default=(),
                   help="sorting_reduction: values in 2..n-1, e.g. 4,2,3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slidewin", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an input sequence file")
    _add_gen_options(gen, "--kind")
    gen.add_argument("--out", required=True)

    run = sub.add_parser("run", help="run and measure one trial")
    run.add_argument("--algo", required=True, choices=bench.ALGOS)
    run.add_argument("--k", type=int)
    run.add_argument("--rank", type=int, dest="t_rank")
    space = run.add_mutually_exclusive_group()
    space.add_argument("--space-bits", type=int)
    space.add_argument("--slots", type=int, help="budget in words instead of bits")
    _add_gen_options(run, "--gen")
    run.add_argument("--input", help="read the input from a sequence file instead of generating it")
    run.add_argument("--verify", action=argparse.BooleanOptionalAction, default=None,
                     help=f"check against the oracle (default: on for n <= {bench.VERIFY_DEFAULT_MAX_N})")
    run.add_argument("--solver", choices=("sort", "hash"), default="sort")
    run.add_argument("--randomized", action="store_true", help="majority-vote every solver query")
    run.add_argument("--noise", type=float, default=0.0,
                     help="ed-reduce: probability a solver misses a duplicate")
    run.add_argument("--csv", help="append the trial record to this CSV file")

    sw = sub.add_parser("sweep", help="run a grid of trials from a config file")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", help="override the config's output CSV path")
    sw.add_argument("--allow-errors", action="store_true")
    return parser


def _cmd_gen(args) -> int:
    seq = generate(GenSpec(args.kind, args.n, seed=args.seed, symbol=args.symbol,
                           positions=args.positions, payload=args.payload))
    save_seq(seq, args.out)
    print(f"wrote {len(seq)} symbols (alphabet {seq.alphabet_size}) to {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    x = load_seq(args.input) if args.input else None
    cfg = bench.TrialConfig(
        algo=args.algo, n=args.n, gen=args.kind, seed=args.seed, k=args.k, t_rank=args.t_rank,
        space_bits=args.space_bits, slots=args.slots, verify=args.verify, solver=args.solver,
        randomized=args.randomized, noise=args.noise, symbol=args.symbol,
        positions=args.positions, payload=args.payload, x=x,
    )
    rec = bench.run_trial(cfg)
    print(",".join(bench.CSV_COLUMNS))
    print(",".join("" if getattr(rec, c) is None else str(getattr(rec, c)) for c in bench.CSV_COLUMNS))
    if args.csv:
        bench.write_csv([rec], args.csv, append=True)
    return EXIT_FAILED if bench.record_failed(rec) else EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = bench.parse_sweep_config(Path(args.config).read_text())
    records, rows = bench.sweep(cfg, out=args.out)
    out = args.out or cfg.out
    print(f"{len(records)} trials -> {out}")
    cols = list(rows[0])
    print("\t".join(cols))
    for row in rows:
        print("\t".join(f"{v:.4g}" if isinstance(v, float) else str(v) for v in row.values()))
    failed = [r for r in records if bench.record_failed(r)]
    if failed and not (args.allow_errors or cfg.allow_errors):
        print(f"{len(failed)} trial(s) failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"gen": _cmd_gen, "run": _cmd_run, "sweep": _cmd_sweep}
    try:
        return handlers[args.command](args)
    except (ConfigError, SeqFormatError, ValueError, OSError) as exc:
        print(f"slidewin: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
