"""Space-budgeted frequency moments over sliding windows.

The first window is evaluated by a multi-pass sweep that streams the
window's distinct values in ascending order with their multiplicities,
holding at most ``slots // 2`` (value, frequency) pairs at a time.

The remaining outputs are produced in groups of ``g`` consecutive slides.
For a group starting at window ``i`` the symbols leaving the window
(``x[i:i+g]``, the *old* block) and entering it (``x[i+n:i+n+g]``, the *new*
block) are indexed in one sorted key table. A single scan of the ``n - g``
symbols between the blocks counts, per key, how often each one occurs in the
part shared by all windows of the group. Each slide then needs only the
per-index counters and two cursors that walk the occurrence lists forward.

Symbols are only ever compared, never hashed.
"""

from __future__ import annotations

from bisect import bisect_left

from .meter import CostMeter, SpaceBudget, counted_sorted, search_costs
from .seqio import as_symbols

# Words of group state per slide in a group: 3 per old/new index
# (counter, leaf id, list link), 5 per key (symbol, middle count, old cursor,
# new list head, new cursor) with up to 2 keys per slide, and 2 for sort
# scratch during construction.
GROUP_WORDS = 18
_LOOP_WORDS = 8
_FIRST_WINDOW_WORDS = 4


def group_size(budget: SpaceBudget, n: int) -> int:
    return max(1, min(n, budget.slots // GROUP_WORDS))


def _window_count(x, n: int) -> int:
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    t = len(x) - n + 1
    if t < 1:
        raise ValueError(f"input of length {len(x)} is shorter than one window of {n}")
    return t


def ascending_runs(x, n: int, budget: SpaceBudget, meter: CostMeter):
    """Yield ``(symbol, frequency)`` for the distinct symbols of ``x[:n]``, ascending.

    Each pass rescans the window and keeps the smallest distinct symbols
    above the previous pass's largest, evicting the largest buffered symbol
    when a smaller newcomer arrives at a full buffer.
    """
    x = as_symbols(x)
    if len(x) < n:
        raise ValueError(f"input of length {len(x)} is shorter than one window of {n}")
    cap = max(1, budget.slots // 2)
    window = x[:n]
    lo = None
    while True:
        keys: list = []
        freqs: list = []
        table = search_costs(0)
        cmps = 0
        for v in window:
            if lo is not None:
                cmps += 1
                if v <= lo:
                    continue
            size = len(keys)
            pos = bisect_left(keys, v)
            cmps += table[pos]
            if pos < size:
                cmps += 1
                if keys[pos] == v:
                    freqs[pos] += 1
                    continue
            if size < cap:
                meter.alloc(2, "fkwin.first_window buffer")
                keys.insert(pos, v)
                freqs.insert(pos, 1)
                table = search_costs(size + 1)
            elif pos < size:
                keys.pop()
                freqs.pop()
                keys.insert(pos, v)
                freqs.insert(pos, 1)
        meter.charge_read(n)
        meter.charge_cmp(cmps)
        yield from zip(keys, freqs)
        meter.release(2 * len(keys))
        if len(keys) < cap:
            return
        lo = keys[-1]


def first_window_fk(x, n: int, k: int, budget: SpaceBudget, meter: CostMeter | None = None) -> int:
    """F_k of ``x[:n]`` within the space budget."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    meter = meter if meter is not None else CostMeter(budget)
    meter.alloc(_FIRST_WINDOW_WORDS, "fkwin.first_window", kind="book")
    total = 0
    for _, f in ascending_runs(x, n, budget, meter):
        total += 1 if k == 0 else f ** k
    meter.release(_FIRST_WINDOW_WORDS, kind="book")
    return total


def _run_group(x, n, k, i, g, y, out, meter, kind, trace):
    """Append outputs for windows i+1 .. i+g to ``out``; return the last one."""
    site = "fkwin.group_state"
    two_g = 2 * g
    meter.alloc(3 * two_g, site, kind)
    meter.alloc(two_g, site + " sort scratch", kind)

    # element ids: 0..g-1 old block (x[i+r]), g..2g-1 new block (x[i+n+r])
    vals = list(x[i:i + g]) + list(x[i + n:i + n + g])
    meter.charge_read(two_g)
    order = counted_sorted(range(two_g), meter, key=vals.__getitem__)
    leaf = [0] * two_g
    keys: list = []
    cmps = 0
    for e in order:
        v = vals[e]
        if keys:
            cmps += 1
            if keys[-1] == v:
                leaf[e] = len(keys) - 1
                continue
        keys.append(v)
        leaf[e] = len(keys) - 1
    n_keys = len(keys)
    meter.alloc(5 * n_keys, site + " keys", kind)
    meter.release(two_g, kind)

    # ascending occurrence lists; old counters count matches to the right
    # within the old block, new counters matches to the left within the new block
    link = [-1] * two_g
    count = [0] * two_g
    old_head = [-1] * n_keys
    for r in range(g - 1, -1, -1):
        lf = leaf[r]
        h = old_head[lf]
        link[r] = h
        count[r] = count[h] + 1 if h != -1 else 0
        old_head[lf] = r
    new_head = [-1] * n_keys
    for e in range(two_g - 1, g - 1, -1):
        lf = leaf[e]
        link[e] = new_head[lf]
        new_head[lf] = e
    for lf in range(n_keys):
        e, seen = new_head[lf], 0
        while e != -1:
            count[e] = seen
            seen += 1
            e = link[e]

    middle = [0] * n_keys
    table = search_costs(n_keys)
    for v in x[i + g:i + n]:
        pos = bisect_left(keys, v)
        cmps += table[pos]
        if pos < n_keys:
            cmps += 1
            if keys[pos] == v:
                middle[pos] += 1
    meter.charge_read(n - g)
    meter.charge_cmp(cmps)

    new_cursor = [-1] * n_keys
    moves_new = moves_old = 0
    for r in range(g):
        la, lb = leaf[r], leaf[g + r]
        if la == lb:
            out.append(y)
            continue
        # x[i+r] leaves: its other occurrences in x[i+r+1 : i+r+n]
        e = new_cursor[la]
        nxt = new_head[la] if e == -1 else link[e]
        while nxt != -1 and nxt - g < r:
            e, nxt = nxt, link[nxt]
            moves_new += 1
        new_cursor[la] = e
        a = count[r] + middle[la] + (count[e] + 1 if e != -1 else 0)
        # x[i+n+r] enters: its occurrences in the same span
        h = old_head[lb]
        while h != -1 and h <= r:
            h = link[h]
            moves_old += 1
        old_head[lb] = h
        b = count[g + r] + middle[lb] + (count[h] + 1 if h != -1 else 0)
        if k == 0:
            y += (b == 0) - (a == 0)
        else:
            y += (b + 1) ** k - b ** k - (a + 1) ** k + a ** k
        out.append(y)

    meter.release(3 * two_g + 5 * n_keys, kind)
    if trace is not None:
        trace.append({"start": i, "size": g, "keys": n_keys,
                      "moves_new": moves_new, "moves_old": moves_old})
    return y


def sliding_fk(x, n: int, k: int, budget: SpaceBudget, meter: CostMeter | None = None,
               trace: list | None = None) -> list[int]:
    """F_k of every length-n window of ``x``, exactly.

    ``meter`` enforces the budget only if it was built with one; when omitted
    a meter bound to ``budget`` is created. ``trace``, if given, receives one
    dict per group with its size and cursor move counts.
    """
    x = as_symbols(x)
    t = _window_count(x, n)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 1:
        return [n] * t
    meter = meter if meter is not None else CostMeter(budget)
    meter.alloc(_LOOP_WORDS, "fkwin.sliding_fk", kind="book")
    y = first_window_fk(x, n, k, budget, meter)
    out = [y]
    g = group_size(budget, n)
    # below GROUP_WORDS slots a one-slide group is constant-size state
    kind = "data" if budget.slots >= GROUP_WORDS else "book"
    i = 0
    while i < t - 1:
        size = min(g, t - 1 - i)
        y = _run_group(x, n, k, i, size, y, out, meter, kind, trace)
        i += size
    meter.release(_LOOP_WORDS, kind="book")
    return out


def sliding_f0_mod2(x, n: int, budget: SpaceBudget, meter: CostMeter | None = None) -> list[int]:
    return [y & 1 for y in sliding_fk(x, n, 0, budget, meter)]
