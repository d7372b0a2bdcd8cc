"""Element distinctness over sliding windows.

Two routes:

* :func:`avg_case_ed_sliding` scans each window from its right end for the
  first duplicated pair and skips every window that must contain it. Linear
  time on average for inputs drawn uniformly from [n], constant extra words.
* :func:`ed_sliding_via_reduction` turns any single-instance distinctness
  solver into a sliding-window one. For each group of ``m`` windows it asks
  the solver about the part shared by all of them, binary-searches the two
  flanks, and recurses on the ``2m - 2`` flank symbols. Recursive problems
  live on *views*: a constant-size record mapping positions back to the
  parent, so nothing is copied and bookkeeping stays O(log n) words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .meter import CostMeter, counted_sorted
from .seqio import as_symbols

BASE_WINDOW = 8
_FRAME_WORDS = 9
_SOLVE_WORDS = 5


def _window_count(x, n: int) -> int:
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    t = len(x) - n + 1
    if t < 1:
        raise ValueError(f"input of length {len(x)} is shorter than one window of {n}")
    return t


def avg_case_ed_sliding(x, n: int, meter: CostMeter | None = None) -> list[int]:
    """ED of every length-n window by right-to-left first-duplicate search."""
    x = as_symbols(x)
    t = _window_count(x, n)
    meter = meter if meter is not None else CostMeter()
    meter.alloc(4, "edwin.avg_case", kind="book")
    out = [1] * t
    s = 0
    reads = cmps = 0
    while s < t:
        end = s + n
        found = -1
        for j in range(end - 2, s - 1, -1):
            v = x[j]
            try:
                r = x.index(v, j + 1, end)
            except ValueError:
                scanned = end - j - 1
            else:
                scanned = r - j
                found = j
            reads += 1 + scanned
            cmps += scanned
            if found >= 0:
                break
        if found < 0:
            s += 1
            continue
        # every window starting in [s, found] holds the pair
        stop = min(found, t - 1)
        for w in range(s, stop + 1):
            out[w] = 0
        s = found + 1
    meter.charge_read(reads)
    meter.charge_cmp(cmps)
    meter.release(4, kind="book")
    return out


# ---- single-instance solvers ----


def ed_single_sort(values, meter: CostMeter | None = None) -> bool:
    """True iff ``values`` are pairwise distinct. Sorts a private copy."""
    meter = meter if meter is not None else CostMeter()
    size = len(values)
    meter.charge_read(size)
    meter.alloc(size, "edwin.ed_single_sort scratch", kind="scratch")
    ordered = counted_sorted(values, meter)
    cmps = 0
    distinct = True
    for a, b in zip(ordered, ordered[1:]):
        cmps += 1
        if a == b:
            distinct = False
            break
    meter.charge_cmp(cmps)
    meter.release(size, kind="scratch")
    return distinct


def ed_single_hash(values, meter: CostMeter | None = None) -> bool:
    """True iff ``values`` are pairwise distinct, via a chained hash table.

    Bucket collisions are settled by explicit equality tests, so the answer
    is exact.
    """
    meter = meter if meter is not None else CostMeter()
    size = len(values)
    nbuckets = 2 * size + 1
    meter.alloc(nbuckets + size, "edwin.ed_single_hash scratch", kind="scratch")
    buckets: list = [None] * nbuckets
    cmps = reads = 0
    distinct = True
    for v in values:
        reads += 1
        slot = (v * 0x9E3779B97F4A7C15 >> 7) % nbuckets
        chain = buckets[slot]
        if chain is None:
            buckets[slot] = [v]
            continue
        hit = False
        for u in chain:
            cmps += 1
            if u == v:
                hit = True
                break
        if hit:
            distinct = False
            break
        chain.append(v)
    meter.charge_read(reads)
    meter.charge_cmp(cmps)
    meter.release(nbuckets + size, kind="scratch")
    return distinct


class EdSolver:
    """A single-instance distinctness solver plugged into the reduction.

    ``error_mode`` is ``"errorless"`` or ``"one_sided"``; a one-sided solver
    may call a duplicated input distinct but never the reverse. ``calls``,
    ``reads`` and ``comparisons`` accumulate the work done inside the solver.
    """

    name = "abstract"
    error_mode = "errorless"

    def __init__(self):
        self.calls = 0
        self.reads = 0
        self.comparisons = 0

    @property
    def cost(self) -> int:
        return self.reads + self.comparisons

    def _decide(self, values, meter: CostMeter) -> bool:
        raise NotImplementedError

    def solve(self, values, meter: CostMeter) -> bool:
        r0, c0 = meter.input_reads, meter.comparisons
        answer = self._decide(values, meter)
        self.calls += 1
        self.reads += meter.input_reads - r0
        self.comparisons += meter.comparisons - c0
        return answer


class SortSolver(EdSolver):
    name = "sort"

    def _decide(self, values, meter):
        return ed_single_sort(values, meter)


class HashSolver(EdSolver):
    name = "hash"

    def _decide(self, values, meter):
        return ed_single_hash(values, meter)


class OneSidedNoise(EdSolver):
    """Wraps an errorless solver; each 'duplicate' verdict flips with probability eps."""

    error_mode = "one_sided"

    def __init__(self, inner: EdSolver, eps: float, seed: int = 0):
        super().__init__()
        if not 0 <= eps < 0.5:
            raise ValueError(f"eps must be in [0, 0.5), got {eps}")
        self.inner = inner
        self.eps = eps
        self.name = f"{inner.name}+noise"
        self._rng = np.random.default_rng(seed)

    def _decide(self, values, meter):
        distinct = self.inner._decide(values, meter)
        if not distinct and self._rng.random() < self.eps:
            return True
        return distinct


def make_solver(name: str) -> EdSolver:
    solvers = {"sort": SortSolver, "hash": HashSolver}
    if name not in solvers:
        raise ValueError(f"unknown solver {name!r}; expected one of {sorted(solvers)}")
    return solvers[name]()


def majority_votes(n: int, factor: int = 2) -> int:
    """Odd repetition count ~ factor * log2(n) for amplifying a noisy solver."""
    c = max(1, math.ceil(factor * math.log2(max(n, 2))))
    return c if c % 2 else c + 1


# ---- the reduction ----


@dataclass(frozen=True)
class _View:
    """Positions [0, 2*split) of a subproblem mapped onto its parent.

    p < split maps to left + p, otherwise to right + (p - split).
    """

    parent: object
    split: int
    left: int
    right: int


def gather(view, lo: int, hi: int) -> list:
    """Symbols at view positions [lo, hi), resolved down to the input."""
    if lo >= hi:
        return []
    if not isinstance(view, _View):
        return list(view[lo:hi])
    split = view.split
    out = []
    if lo < split:
        out += gather(view.parent, view.left + lo, view.left + min(hi, split))
    if hi > split:
        a = max(lo, split) - split
        out += gather(view.parent, view.right + a, view.right + hi - split)
    return out


@dataclass
class ReductionStats:
    depth: int = 0
    max_depth: int = 0
    groups: int = 0
    queries: int = 0


class _Reducer:
    def __init__(self, solver: EdSolver, meter: CostMeter, votes: int):
        self.solver = solver
        self.meter = meter
        self.votes = votes
        self.stats = ReductionStats()

    def distinct(self, view, lo: int, hi: int) -> bool:
        self.stats.queries += 1
        values = gather(view, lo, hi)
        if self.votes == 1:
            return self.solver.solve(values, self.meter)
        yes = sum(self.solver.solve(values, self.meter) for _ in range(self.votes))
        return 2 * yes > self.votes

    def direct(self, view, base: int, w: int, t: int, emit) -> None:
        meter = self.meter
        for s in range(t):
            vals = gather(view, base + s, base + s + w)
            meter.charge_read(w)
            cmps, ok = 0, 1
            for a in range(w - 1):
                va = vals[a]
                for b in range(a + 1, w):
                    cmps += 1
                    if vals[b] == va:
                        ok = 0
                        break
                if not ok:
                    break
            meter.charge_cmp(cmps)
            emit(ok)

    def solve(self, view, base: int, w: int, t: int, emit) -> None:
        """Emit ED of the t windows of length w starting at view position base."""
        if w <= BASE_WINDOW:
            self.direct(view, base, w, t, emit)
            return
        meter = self.meter
        meter.alloc(_SOLVE_WORDS, "edwin.reduction solve frame", kind="book")
        m = w // 2
        for g in range(0, t, m):
            self.group(view, base + g, w, min(m, t - g), emit)
        meter.release(_SOLVE_WORDS, kind="book")

    def group(self, view, b: int, w: int, m: int, emit) -> None:
        """Emit ED_w over m windows starting at view position b (m < w)."""
        stats = self.stats
        stats.groups += 1
        if m == 1:
            emit(int(self.distinct(view, b, b + w)))
            return
        # x_m..x_n (1-based) is inside every window of the group
        if not self.distinct(view, b + m - 1, b + w):
            for _ in range(m):
                emit(0)
            return
        meter = self.meter
        meter.alloc(_FRAME_WORDS, "edwin.reduction group frame", kind="book")
        stats.depth += 1
        stats.max_depth = max(stats.max_depth, stats.depth)

        # i_L: largest j in [1, m-1] whose suffix x_j..x_n has a duplicate
        lo, hi = 0, m - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.distinct(view, b + mid - 1, b + w):
                hi = mid - 1
            else:
                lo = mid
        i_left = lo
        # i_R: smallest j in [1, m-1] with a duplicate in x_m..x_{n+j}, else m
        lo, hi = 1, m
        while lo < hi:
            mid = (lo + hi) // 2
            if self.distinct(view, b + m - 1, b + w + mid):
                lo = mid + 1
            else:
                hi = mid
        i_right = lo

        if i_left >= i_right:
            for _ in range(m):
                emit(0)
        else:
            pos = 0

            def masked(bit):
                nonlocal pos
                pos += 1
                emit(int(bit and i_left < pos <= i_right))

            side = _View(view, m - 1, b, b + w)
            self.solve(side, 0, m - 1, m, masked)
        stats.depth -= 1
        meter.release(_FRAME_WORDS, kind="book")


def reduce_window_ed(x, n: int, m: int, solver: EdSolver, meter: CostMeter | None = None,
                     votes: int = 1) -> list[int]:
    """ED_n over the m windows of ``x`` (length n + m - 1), via one reduction step."""
    x = as_symbols(x)
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    if len(x) != n + m - 1:
        raise ValueError(f"input length {len(x)} != n + m - 1 = {n + m - 1}")
    meter = meter if meter is not None else CostMeter()
    out: list[int] = []
    _Reducer(solver, meter, votes).group(x, 0, n, m, out.append)
    return out


def ed_sliding_via_reduction(x, n: int, solver: EdSolver | None = None,
                             meter: CostMeter | None = None, randomized: bool = False,
                             votes: int | None = None, stats: ReductionStats | None = None) -> list[int]:
    """ED of every length-n window of ``x`` using a single-instance solver.

    With ``randomized`` every solver query is repeated ``votes`` times
    (default :func:`majority_votes`) and the majority answer is used.
    """
    x = as_symbols(x)
    t = _window_count(x, n)
    solver = solver if solver is not None else SortSolver()
    meter = meter if meter is not None else CostMeter()
    if votes is None:
        votes = majority_votes(n) if randomized else 1
    reducer = _Reducer(solver, meter, votes)
    out: list[int] = []
    reducer.solve(x, 0, n, t, out.append)
    if stats is not None:
        stats.__dict__.update(reducer.stats.__dict__)
    return out
