"""Trial runner and parameter sweeps producing CSV tradeoff data."""

from __future__ import annotations

import configparser
import csv
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import edwin, fkwin, oracle, oswin
from .meter import BudgetViolation, CostMeter, SpaceBudget, word_bits_for
from .seqio import GEN_KINDS, GenSpec, SymbolSeq, generate

log = logging.getLogger(__name__)

ALGOS = ("fk", "f0mod2", "ed-avg", "ed-reduce", "max", "min", "order")
BUDGETED = ("fk", "f0mod2")
VERIFY_DEFAULT_MAX_N = 4096

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class TrialConfig:
    algo: str
    n: int
    gen: str = "uniform"
    seed: int = 0
    k: int | None = None
    t_rank: int | None = None
    space_bits: int | None = None
    slots: int | None = None
    verify: bool | None = None
    solver: str = "sort"
    randomized: bool = False
    noise: float = 0.0
    symbol: int = 1
    positions: tuple = ()
    payload: tuple = ()
    x: SymbolSeq | None = None

    def validate(self) -> None:
        if self.algo not in ALGOS:
            raise ConfigError(f"unknown algorithm {self.algo!r}; expected one of {ALGOS}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.x is None and self.gen not in GEN_KINDS:
            raise ConfigError(f"unknown generator {self.gen!r}; expected one of {GEN_KINDS}")
        if self.algo == "fk" and (self.k is None or self.k < 0):
            raise ConfigError("algorithm fk needs --k >= 0")
        if self.algo == "order" and (self.t_rank is None or not 1 <= self.t_rank <= self.n):
            raise ConfigError(f"algorithm order needs --rank in [1, {self.n}]")
        if self.solver not in ("sort", "hash"):
            raise ConfigError(f"unknown solver {self.solver!r}")


@dataclass
class TrialRecord:
    algo: str
    k: int | None
    t_rank: int | None
    n: int
    s_bits: int
    seed: int
    gen: str
    reads: int
    comparisons: int
    peak_aux_words: int
    wall_ns: int
    verified: bool
    status: str
    note: str = ""


CSV_COLUMNS = tuple(f.name for f in fields(TrialRecord))


def _input_for(cfg: TrialConfig) -> SymbolSeq:
    if cfg.x is not None:
        return cfg.x
    spec = GenSpec(cfg.gen, cfg.n, seed=cfg.seed, symbol=cfg.symbol,
                   positions=tuple(cfg.positions), payload=tuple(cfg.payload))
    try:
        return generate(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _budget_for(cfg: TrialConfig, word_bits: int) -> SpaceBudget:
    if cfg.slots is not None:
        bits = cfg.slots * word_bits
    else:
        bits = cfg.space_bits if cfg.space_bits is not None else cfg.n * word_bits
    try:
        return SpaceBudget(bits, word_bits)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _run_algo(cfg: TrialConfig, x, budget, meter):
    n = cfg.n
    algo = cfg.algo
    if algo == "fk":
        return fkwin.sliding_fk(x, n, cfg.k, budget, meter), lambda: oracle.oracle_fk(x, n, cfg.k)
    if algo == "f0mod2":
        return fkwin.sliding_f0_mod2(x, n, budget, meter), lambda: oracle.oracle_f0_mod2(x, n)
    if algo == "ed-avg":
        return edwin.avg_case_ed_sliding(x, n, meter), lambda: oracle.oracle_ed(x, n)
    if algo == "ed-reduce":
        solver = edwin.make_solver(cfg.solver)
        if cfg.noise > 0:
            solver = edwin.OneSidedNoise(solver, cfg.noise, seed=cfg.seed)
        out = edwin.ed_sliding_via_reduction(x, n, solver, meter, randomized=cfg.randomized)
        return out, lambda: oracle.oracle_ed(x, n)
    if algo == "max":
        return oswin.sliding_max(x, n, meter), lambda: oracle.oracle_order(x, n, n)
    if algo == "min":
        return oswin.sliding_min(x, n, meter), lambda: oracle.oracle_order(x, n, 1)
    return (oswin.sliding_order_baseline(x, n, cfg.t_rank, meter),
            lambda: oracle.oracle_order(x, n, cfg.t_rank))


def run_trial(cfg: TrialConfig) -> TrialRecord:
    """Run one algorithm on one generated input and measure it.

    Raises ConfigError for invalid configurations; algorithm failures are
    reported in the record's ``status``.
    """
    cfg.validate()
    seq = _input_for(cfg)
    if len(seq) < cfg.n:
        raise ConfigError(f"input of length {len(seq)} is shorter than n={cfg.n}")
    word_bits = word_bits_for(cfg.n, seq.alphabet_size)
    budget = _budget_for(cfg, word_bits) if cfg.algo in BUDGETED else None
    meter = CostMeter(budget)
    verify = cfg.verify if cfg.verify is not None else cfg.n <= VERIFY_DEFAULT_MAX_N
    x = seq.data
    status, note, verified = "unchecked", "", False
    try:
        with meter.timed():
            out, expected = _run_algo(cfg, x, budget, meter)
    except BudgetViolation as exc:
        status, note = "budget_violation", str(exc)
    except Exception as exc:  # noqa: BLE001 - surfaced in the record
        log.exception("trial failed")
        status, note = "error", f"{type(exc).__name__}: {exc}"
    else:
        if verify:
            want = expected()
            verified = out == want
            if verified:
                status = "ok"
            else:
                bad = next(i for i, (a, b) in enumerate(zip(out, want)) if a != b)
                status, note = "mismatch", f"first mismatch at window {bad}: got {out[bad]}, expected {want[bad]}"
    s_bits = budget.bits if budget is not None else meter.aux_words_peak * word_bits
    return TrialRecord(
        algo=cfg.algo,
        k=cfg.k if cfg.algo == "fk" else (0 if cfg.algo == "f0mod2" else None),
        t_rank=cfg.t_rank if cfg.algo == "order" else None,
        n=cfg.n, s_bits=s_bits, seed=cfg.seed,
        gen=cfg.gen if cfg.x is None else "file",
        reads=meter.input_reads, comparisons=meter.comparisons,
        peak_aux_words=meter.aux_words_peak, wall_ns=meter.wall_ns,
        verified=verified, status=status, note=note,
    )


def record_failed(rec: TrialRecord) -> bool:
    return rec.status in ("mismatch", "budget_violation", "error")


def write_csv(records, path, append: bool = False) -> None:
    path = Path(path)
    new_file = not append or not path.exists() or path.stat().st_size == 0
    with path.open("a" if append else "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        if new_file:
            writer.writeheader()
        for rec in records:
            row = asdict(rec)
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


# ---- sweeps ----


def _ints(text: str) -> list[int]:
    return [int(v) for v in _words(text)]


def _words(text: str) -> list[str]:
    return [v.strip() for v in text.replace(";", ",").split(",") if v.strip()]


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass
class SweepConfig:
    algos: list
    ns: list
    seeds: list
    gens: list
    ks: list
    ranks: list
    space_bits: list | None = None
    slots: list | None = None
    verify: bool | None = None
    solver: str = "sort"
    randomized: bool = False
    out: str = "sweep.csv"
    jobs: int = 1
    allow_errors: bool = False

    def trials(self) -> list[TrialConfig]:
        cells = []
        for algo, n, gen, seed in itertools.product(self.algos, self.ns, self.gens, self.seeds):
            params = [(k, None) for k in self.ks] if algo == "fk" else (
                [(None, r) for r in self.ranks] if algo == "order" else [(None, None)])
            if algo in BUDGETED:
                if self.slots:
                    bits = [("slots", s) for s in self.slots]
                elif self.space_bits:
                    bits = [("bits", b) for b in self.space_bits]
                else:
                    bits = [("bits", None)]
            else:
                bits = [("bits", None)]
            for (k, rank), (unit, amount) in itertools.product(params, bits):
                cells.append(TrialConfig(
                    algo=algo, n=n, gen=gen, seed=seed, k=k, t_rank=rank,
                    space_bits=amount if unit == "bits" else None,
                    slots=amount if unit == "slots" else None,
                    verify=self.verify, solver=self.solver, randomized=self.randomized))
        return cells


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse the flat ``key = value`` sweep format (``#`` comments, comma lists)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string("[sweep]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"bad sweep config: {exc}") from exc
    raw = dict(parser["sweep"])
    known = {"algo", "n", "seed", "seeds", "gen", "k", "rank", "space_bits", "slots",
             "verify", "solver", "randomized", "out", "jobs", "allow_errors"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown sweep keys: {sorted(unknown)}")
    try:
        cfg = SweepConfig(
            algos=_words(raw.get("algo", "")),
            ns=_ints(raw.get("n", "")),
            seeds=_ints(raw.get("seeds", raw.get("seed", "0"))),
            gens=_words(raw.get("gen", "uniform")),
            ks=_ints(raw.get("k", "0")),
            ranks=_ints(raw.get("rank", "1")),
            space_bits=_ints(raw["space_bits"]) if "space_bits" in raw else None,
            slots=_ints(raw["slots"]) if "slots" in raw else None,
            verify=_bool(raw["verify"]) if "verify" in raw else None,
            solver=raw.get("solver", "sort").strip(),
            randomized=_bool(raw.get("randomized", "false")),
            out=raw.get("out", "sweep.csv").strip(),
            jobs=int(raw.get("jobs", "1")),
            allow_errors=_bool(raw.get("allow_errors", "false")),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad sweep config value: {exc}") from exc
    if not cfg.algos or not cfg.ns or not cfg.seeds or not cfg.gens:
        raise ConfigError("empty grid: algo, n, seed and gen must each list at least one value")
    for algo in cfg.algos:
        if algo not in ALGOS:
            raise ConfigError(f"unknown algorithm {algo!r}")
    return cfg


def normalized_tradeoff(cost: float, s_bits: int, n: int) -> float:
    """cost * S / (n^2 log2^2 n), the quantity bounded by the F_k algorithm."""
    lg = math.log2(max(n, 2))
    return cost * s_bits / (n * n * lg * lg)


def summarize(records) -> list[dict]:
    """One summary row per (algo, n, k, t_rank, gen) across the space grid and seeds."""
    groups: dict = {}
    for rec in records:
        key = (rec.algo, rec.n, rec.k, rec.t_rank, rec.gen)
        groups.setdefault(key, []).append(rec)
    rows = []
    for (algo, n, k, t_rank, gen), recs in sorted(groups.items(), key=lambda kv: str(kv[0])):
        by_space: dict = {}
        for rec in recs:
            by_space.setdefault(rec.s_bits, []).append(rec.reads + rec.comparisons)
        mean_cost = {s: sum(v) / len(v) for s, v in by_space.items()}
        spaces = sorted(mean_cost)
        norm = [normalized_tradeoff(mean_cost[s], s, n) for s in spaces]
        costs = [mean_cost[s] for s in spaces]
        all_costs = [c for v in by_space.values() for c in v]
        rows.append({
            "algo": algo, "n": n, "k": k, "t_rank": t_rank, "gen": gen,
            "trials": len(recs),
            "space_points": len(spaces),
            "mean_cost_per_n": sum(all_costs) / len(all_costs) / n,
            "norm_ts_min": min(norm),
            "norm_ts_max": max(norm),
            "norm_ts_ratio": max(norm) / min(norm) if min(norm) > 0 else math.inf,
            "cost_nonincreasing_in_space": all(b <= a for a, b in zip(costs, costs[1:])),
            "failures": sum(record_failed(r) for r in recs),
        })
    return rows


def sweep(cfg: SweepConfig, out: str | None = None) -> tuple[list[TrialRecord], list[dict]]:
    """Run every grid cell, write CSV rows in grid order and a summary CSV beside them."""
    cells = cfg.trials()
    if not cells:
        raise ConfigError("empty grid")
    for cell in cells:
        cell.validate()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(run_trial, cells))
    else:
        records = [run_trial(c) for c in cells]
    path = Path(out or cfg.out)
    write_csv(records, path)
    rows = summarize(records)
    summary_path = path.with_name(path.stem + ".summary.csv")
    with summary_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    return records, rows
