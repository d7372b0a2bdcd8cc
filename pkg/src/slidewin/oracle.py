"""Brute-force ground truth: every window is rescanned from scratch.

These functions are deliberately slow, unbudgeted and hash-based; they are
the reference the real algorithms are checked against.
"""

from __future__ import annotations

from collections import Counter

from .seqio import as_symbols


def _window_count(x, n: int, t: int | None) -> int:
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    count = len(x) - n + 1
    if count < 1:
        raise ValueError(f"input of length {len(x)} is shorter than one window of {n}")
    if t is not None and t != count:
        raise ValueError(f"input length {len(x)} != n + t - 1 = {n + t - 1}")
    return count


def oracle_fk(x, n: int, k: int, t: int | None = None) -> list[int]:
    """k-th frequency moment of every length-n window (0**0 terms excluded)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    x = as_symbols(x)
    out = []
    for i in range(_window_count(x, n, t)):
        freqs = Counter(x[i:i + n]).values()
        out.append(len(freqs) if k == 0 else sum(f ** k for f in freqs))
    return out


def oracle_f0_mod2(x, n: int, t: int | None = None) -> list[int]:
    x = as_symbols(x)
    return [len(set(x[i:i + n])) & 1 for i in range(_window_count(x, n, t))]


def oracle_ed(x, n: int, t: int | None = None) -> list[int]:
    x = as_symbols(x)
    return [int(len(set(x[i:i + n])) == n) for i in range(_window_count(x, n, t))]


def oracle_order(x, n: int, t_rank: int, t: int | None = None) -> list[int]:
    """t_rank-th smallest symbol (with multiplicity) of every window."""
    if not 1 <= t_rank <= n:
        raise ValueError(f"rank {t_rank} outside [1, {n}]")
    x = as_symbols(x)
    return [sorted(x[i:i + n])[t_rank - 1] for i in range(_window_count(x, n, t))]


def window_frequency(x, start: int, n: int, symbol: int) -> int:
    """Occurrences of ``symbol`` in the window of length n starting at ``start``."""
    return sum(1 for v in as_symbols(x)[start:start + n] if v == symbol)
