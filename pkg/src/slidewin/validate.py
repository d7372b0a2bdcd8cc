"""Statistical checks on the uniform input distribution.

Used to confirm the generator behaves as the analysis of the algorithms
assumes: distinct counts concentrate, many symbols are unique, and the first
repeat in an i.i.d. stream over [n] comes after about sqrt(n) draws.
"""

from __future__ import annotations

import numpy as np

from .seqio import GenSpec, as_symbols, generate, spawn_seeds


def window_f0_profile(x, n: int) -> list[int]:
    """Distinct-symbol count of every length-n window, updated incrementally."""
    x = as_symbols(x)
    counts: dict = {}
    for v in x[:n]:
        counts[v] = counts.get(v, 0) + 1
    distinct = len(counts)
    out = [distinct]
    for j in range(len(x) - n):
        old, new = x[j], x[j + n]
        if old != new:
            counts[old] -= 1
            if counts[old] == 0:
                distinct -= 1
            c = counts.get(new, 0)
            if c == 0:
                distinct += 1
            counts[new] = c + 1
        out.append(distinct)
    return out


def f0_all_in_range(x, n: int, lo: float = 0.5, hi: float = 0.85) -> bool:
    return all(lo * n <= f <= hi * n for f in window_f0_profile(x, n))


def unique_prefix_positions(x, n: int) -> int:
    """Positions j < n (1-based) whose symbol occurs nowhere else in ``x``."""
    x = as_symbols(x)
    counts = np.bincount(np.asarray(x))
    return int(np.count_nonzero(counts[np.asarray(x[:n - 1])] == 1))


def uniform_validators(n: int, samples: int, seed: int = 0) -> dict:
    """Fractions of uniform inputs passing the F0-range and unique-count checks."""
    in_range = enough_unique = 0
    for child in spawn_seeds(seed, samples):
        x = generate(GenSpec("uniform", n, seed=child)).data
        in_range += f0_all_in_range(x, n)
        enough_unique += unique_prefix_positions(x, n) >= n / 24
    return {"f0_in_range": in_range / samples, "unique_enough": enough_unique / samples}


def first_duplicate_draws(n: int, trials: int, seed: int = 0) -> np.ndarray:
    """Draw count X at which an i.i.d. uniform stream over [n] first repeats."""
    rng = np.random.default_rng(seed)
    seen = np.zeros((trials, n + 1), dtype=bool)
    result = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    draw = 0
    while active.size:
        draw += 1
        values = rng.integers(1, n + 1, size=active.size)
        hit = seen[active, values]
        result[active[hit]] = draw
        seen[active[~hit], values[~hit]] = True
        active = active[~hit]
    return result


def birthday_stats(n: int, trials: int, seed: int = 0) -> dict:
    draws = first_duplicate_draws(n, trials, seed)
    return {
        "p_at_least_half": float(np.mean(draws >= n / 2)),
        "mean_square": float(np.mean(draws.astype(float) ** 2)),
        "mean": float(np.mean(draws)),
    }
