"""Order statistics over sliding windows.

``sliding_max``/``sliding_min`` use the halving scheme: take the extreme of
the middle window, and whichever half of it holds that extreme is shared by
half of the remaining windows, so those outputs follow from one comparison
each. The other half of the windows becomes the next, half-size region.
Only the region endpoints are kept, so extra space is a constant number of
words and comparisons are O(n log n).

``sliding_order_baseline`` answers any rank by selecting in every window
separately; ``sliding_order_sorted`` keeps the window sorted instead.
"""

from __future__ import annotations

import operator
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import accumulate

from .meter import CostMeter, counted_sorted, search_costs
from .seqio import GenSpec, as_symbols, generate


def _window_count(x, n: int) -> int:
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    t = len(x) - n + 1
    if t < 1:
        raise ValueError(f"input of length {len(x)} is shorter than one window of {n}")
    return t


def _sliding_extreme(x, n: int, meter: CostMeter, largest: bool) -> list:
    x = as_symbols(x)
    t = _window_count(x, n)
    meter.alloc(8, "oswin.sliding_extreme", kind="book")
    pick = max if largest else min
    # `beats(a, b)`: a strictly more extreme than b
    beats = operator.gt if largest else operator.lt
    out = [None] * t
    reads = cmps = 0
    for block in range(0, t, n):
        # starts [a, b] with b - a < n: every window contains x[b : a+n]
        a, b = block, min(block + n, t) - 1
        while a <= b:
            q = b - a + 1
            c = a + (q + 1) // 2 - 1
            # window c split at a+n-1: the left part is shared by starts a..c,
            # the right part by starts c..b
            left = x[c:a + n]
            right = x[a + n:c + n]
            reads += n
            best = pick(left)
            cmps += len(left) - 1
            if right:
                r_best = pick(right)
                cmps += len(right)
                in_left = not beats(r_best, best)
                if not in_left:
                    best = r_best
            else:
                in_left = True
            if in_left:
                # slide left: window s-1 gains x[s-1], loses only symbols right of the extreme
                run = list(accumulate(reversed(x[a:c]), pick, initial=best))
                reads += c - a
                cmps += c - a
                for offset, v in enumerate(run):
                    out[c - offset] = v
                a = c + 1
            else:
                run = list(accumulate(x[c + n:b + n], pick, initial=best))
                reads += b - c
                cmps += b - c
                for offset, v in enumerate(run):
                    out[c + offset] = v
                b = c - 1
    meter.charge_read(reads)
    meter.charge_cmp(cmps)
    meter.release(8, kind="book")
    return out


def sliding_max(x, n: int, meter: CostMeter | None = None) -> list:
    return _sliding_extreme(x, n, meter if meter is not None else CostMeter(), largest=True)


def sliding_min(x, n: int, meter: CostMeter | None = None) -> list:
    return _sliding_extreme(x, n, meter if meter is not None else CostMeter(), largest=False)


def _check_rank(n: int, t_rank: int) -> None:
    if not 1 <= t_rank <= n:
        raise ValueError(f"rank {t_rank} outside [1, {n}]")


def quickselect(values: list, rank: int, meter: CostMeter):
    """rank-th smallest (1-based) of ``values``; reorders ``values`` in place.

    Three-way partition around the middle element; one comparison charged
    per element per equality/ordering test.
    """
    lo, hi = 0, len(values)
    k = rank - 1
    cmps = 0
    while True:
        if hi - lo == 1:
            meter.charge_cmp(cmps)
            return values[lo]
        pivot = values[(lo + hi) // 2]
        less, equal, greater = [], [], []
        for v in values[lo:hi]:
            cmps += 1
            if v < pivot:
                less.append(v)
                continue
            cmps += 1
            if v == pivot:
                equal.append(v)
            else:
                greater.append(v)
        values[lo:hi] = less + equal + greater
        if k < lo + len(less):
            hi = lo + len(less)
        elif k < lo + len(less) + len(equal):
            meter.charge_cmp(cmps)
            return pivot
        else:
            lo = lo + len(less) + len(equal)


def sliding_order_baseline(x, n: int, t_rank: int, meter: CostMeter | None = None) -> list:
    """t_rank-th smallest of every window, selecting in each window independently."""
    _check_rank(n, t_rank)
    x = as_symbols(x)
    t = _window_count(x, n)
    meter = meter if meter is not None else CostMeter()
    out = []
    for s in range(t):
        meter.alloc(n, "oswin.baseline window copy", kind="scratch")
        window = list(x[s:s + n])
        meter.charge_read(n)
        out.append(quickselect(window, t_rank, meter))
        meter.release(n, kind="scratch")
    return out


def sliding_order_sorted(x, n: int, t_rank: int, meter: CostMeter | None = None) -> list:
    """t_rank-th smallest of every window from an incrementally sorted window."""
    _check_rank(n, t_rank)
    x = as_symbols(x)
    t = _window_count(x, n)
    meter = meter if meter is not None else CostMeter()
    meter.alloc(n, "oswin.sorted window", kind="scratch")
    window = counted_sorted(x[:n], meter)
    meter.charge_read(n)
    out = [window[t_rank - 1]]
    remove_costs = search_costs(n)
    insert_costs = search_costs(n - 1)
    cmps = 0
    for s in range(1, t):
        pos = bisect_left(window, x[s - 1])
        cmps += remove_costs[pos]
        del window[pos]
        v = x[s + n - 1]
        pos = bisect_left(window, v)
        cmps += insert_costs[pos]
        window.insert(pos, v)
        out.append(window[t_rank - 1])
    meter.charge_read(2 * (t - 1))
    meter.charge_cmp(cmps)
    meter.release(n, kind="scratch")
    return out


def max_payload(n: int) -> int:
    """Longest payload the embedding supports: window t must still hold all of it."""
    return (n + 1) // 2


@dataclass
class ReductionCheck:
    ok: bool
    mismatch: int | None = None
    outputs: list = field(default_factory=list)
    expected: list = field(default_factory=list)


def verify_sorting_reduction(s, n: int, meter: CostMeter | None = None,
                             impl=sliding_order_sorted) -> ReductionCheck:
    """Check that the first len(s) outputs of rank-len(s) windows sort ``s`` descending.

    ``impl(x, n, t_rank, meter)`` is any sliding order-statistic routine.
    Only the first ``len(s)`` windows are computed. Payloads longer than
    :func:`max_payload` are rejected: from window n-t+2 on the payload itself
    starts leaving the window, so the outputs no longer spell out ``s``.
    """
    s = tuple(int(v) for v in s)
    t_rank = len(s)
    if t_rank > max_payload(n):
        raise ValueError(f"payload length {t_rank} exceeds (n+1)//2 = {max_payload(n)} for n={n}")
    x = generate(GenSpec("sorting_reduction", n, payload=s)).data
    meter = meter if meter is not None else CostMeter()
    outputs = impl(x[:n + t_rank - 1], n, t_rank, meter)
    expected = sorted(s, reverse=True)
    for i, (got, want) in enumerate(zip(outputs, expected)):
        if got != want:
            return ReductionCheck(False, i, list(outputs), expected)
    return ReductionCheck(True, None, list(outputs), expected)
