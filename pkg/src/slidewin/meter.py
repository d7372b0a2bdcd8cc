"""Machine-independent cost accounting and space-budget enforcement.

Every algorithm in the package charges its work to a :class:`CostMeter`:
one unit per input symbol loaded and one unit per symbol comparison.
Auxiliary memory is tracked in machine words, split into three kinds:

``data``
    Working storage that scales with the space budget. Checked against
    ``SpaceBudget.slots`` when the meter carries a budget.
``book``
    Constant-size bookkeeping (indices, loop counters, running totals).
    Checked against ``BOOKKEEPING_WORDS`` when the meter carries a budget.
``scratch``
    Declared budget-exempt storage (reference solvers). Tracked, never
    checked.

The input tape and output buffers are never charged.
"""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache

# c0: smallest usable budget in words (one (value, frequency) pair).
MIN_SLOTS = 2
# c1: allowance for O(log n)-bit bookkeeping on top of the budgeted slots.
BOOKKEEPING_WORDS = 32

_KINDS = ("data", "book", "scratch")


class BudgetViolation(RuntimeError):
    """An allocation pushed a budgeted run past its ceiling."""

    def __init__(self, site: str, kind: str, requested: int, now: int, limit: int):
        self.site = site
        self.kind = kind
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"{site}: {kind} allocation of {requested} words would raise usage "
            f"to {now + requested}, limit is {limit}"
        )


class MeterError(RuntimeError):
    """Internal accounting error (release of words that were never allocated)."""


def word_bits_for(n: int, alphabet_size: int = 0) -> int:
    """Bits per machine word: ceil(log2(max(n, |alphabet|))), at least 1."""
    return max(1, math.ceil(math.log2(max(n, alphabet_size, 2))))


@dataclass(frozen=True)
class SpaceBudget:
    bits: int
    word_bits: int

    def __post_init__(self):
        if self.word_bits < 1:
            raise ValueError(f"word_bits must be positive, got {self.word_bits}")
        if self.bits < MIN_SLOTS * self.word_bits:
            raise ValueError(
                f"space budget of {self.bits} bits is below the minimum of "
                f"{MIN_SLOTS} words x {self.word_bits} bits"
            )

    @property
    def slots(self) -> int:
        return self.bits // self.word_bits

    @classmethod
    def from_slots(cls, slots: int, word_bits: int) -> SpaceBudget:
        return cls(bits=slots * word_bits, word_bits=word_bits)


@dataclass
class CostMeter:
    """Counters for one algorithm run.

    Counters only grow. ``aux_words_now``/``aux_words_peak`` cover all three
    allocation kinds; per-kind peaks are kept in ``peaks``.
    """

    budget: SpaceBudget | None = None
    input_reads: int = 0
    comparisons: int = 0
    aux_words_now: int = 0
    aux_words_peak: int = 0
    wall_ns: int = 0
    now: dict = field(default_factory=lambda: dict.fromkeys(_KINDS, 0))
    peaks: dict = field(default_factory=lambda: dict.fromkeys(_KINDS, 0))

    @property
    def cost(self) -> int:
        return self.input_reads + self.comparisons

    def charge_read(self, count: int = 1) -> None:
        self.input_reads += count

    def charge_cmp(self, count: int = 1) -> None:
        self.comparisons += count

    def _limit(self, kind: str) -> int | None:
        if self.budget is None:
            return None
        if kind == "data":
            return self.budget.slots
        if kind == "book":
            return BOOKKEEPING_WORDS
        return None

    def alloc(self, words: int, site: str = "?", kind: str = "data") -> None:
        if words < 0:
            raise MeterError(f"{site}: negative allocation {words}")
        limit = self._limit(kind)
        if limit is not None and self.now[kind] + words > limit:
            raise BudgetViolation(site, kind, words, self.now[kind], limit)
        self.now[kind] += words
        self.peaks[kind] = max(self.peaks[kind], self.now[kind])
        self.aux_words_now += words
        self.aux_words_peak = max(self.aux_words_peak, self.aux_words_now)

    def release(self, words: int, kind: str = "data") -> None:
        if words < 0 or words > self.now[kind]:
            raise MeterError(
                f"release of {words} {kind} words with only {self.now[kind]} allocated"
            )
        self.now[kind] -= words
        self.aux_words_now -= words

    @contextmanager
    def timed(self):
        start = time.perf_counter_ns()
        try:
            yield self
        finally:
            self.wall_ns += time.perf_counter_ns() - start


# ---- comparison-counted primitives shared by the algorithms ----


@lru_cache(maxsize=4096)
def search_costs(size: int) -> tuple[int, ...]:
    """Comparisons made by ``bisect.bisect_left`` on a sorted list of ``size``.

    Entry ``p`` is the count for a search that returns insertion point ``p``.
    bisect_left's path is fully determined by its result (``a[mid] < v`` iff
    ``mid < p``), so the table is exact.
    """
    costs = [0] * (size + 1)
    # (lo, hi, depth): results p in [lo, hi] share the first `depth` probes
    stack = [(0, size, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        if lo == hi:
            costs[lo] = depth
            continue
        mid = (lo + hi) // 2
        stack.append((lo, mid, depth + 1))
        stack.append((mid + 1, hi, depth + 1))
    return tuple(costs)


def counted_sorted(items, meter: CostMeter, key=None) -> list:
    """``sorted`` with every element comparison charged to ``meter``."""
    count = 0
    if key is None:
        def cmp(a, b):
            nonlocal count
            count += 1
            return -1 if a < b else (1 if b < a else 0)
    else:
        def cmp(a, b):
            nonlocal count
            count += 1
            ka, kb = key(a), key(b)
            return -1 if ka < kb else (1 if kb < ka else 0)

    result = sorted(items, key=cmp_to_key(cmp))
    meter.charge_cmp(count)
    return result
