import math
import random

import numpy as np
import pytest

from slidewin.edwin import (BASE_WINDOW, HashSolver, OneSidedNoise, ReductionStats, SortSolver,
                            _View, avg_case_ed_sliding, ed_single_hash, ed_single_sort,
                            ed_sliding_via_reduction, gather, majority_votes, make_solver,
                            reduce_window_ed)
from slidewin.meter import CostMeter
from slidewin.oracle import oracle_ed
from slidewin.seqio import GenSpec, generate

from conftest import random_input


def test_avg_case_trace():
    # window 0 (1,2,3) distinct; window 1 (2,3,2) holds the pair at 1 and 3; window 2 distinct.
    # each window: scanning j = s+1 costs 2 reads/1 cmp, j = s costs 3 reads/2 cmps
    m = CostMeter()
    assert avg_case_ed_sliding((1, 2, 3, 2, 1), 3, m) == [1, 0, 1]
    assert m.comparisons == 3 + 3 + 3
    assert m.input_reads == 2 + 3 + 2 + 3 + 2 + 3


def test_avg_case_extremes():
    assert avg_case_ed_sliding(generate(GenSpec("all_distinct", 20, seed=2)), 20) == [1] * 20
    assert avg_case_ed_sliding((4,) * 19, 10) == [0] * 10
    assert avg_case_ed_sliding((4,), 1) == [1]


def test_avg_case_matches_oracle(rnd):
    for _ in range(2000):
        n = rnd.randint(1, 50)
        x = random_input(rnd, n, alphabet=rnd.randint(1, 4 * n))
        assert avg_case_ed_sliding(x, n) == oracle_ed(x, n)


def test_single_solvers():
    for solve in (ed_single_sort, ed_single_hash):
        assert solve((3, 1, 2)) is True
        assert solve((3, 1, 3)) is False
        assert solve((7,)) is True


def test_single_solvers_random(rnd):
    for _ in range(500):
        vals = [rnd.randint(1, 60) for _ in range(rnd.randint(1, 40))]
        truth = len(set(vals)) == len(vals)
        assert ed_single_sort(vals) is truth
        assert ed_single_hash(vals) is truth


def test_random_n_to_n_has_duplicates():
    # independent check: P(no repeat in n draws from [n]) = n!/n^n, about 1e-27 at n=64
    n, trials = 64, 2000
    assert math.factorial(n) / n ** n < 1e-20
    rng = np.random.default_rng(8)
    dup = sum(not ed_single_sort(rng.integers(1, n + 1, n).tolist()) for _ in range(trials))
    assert dup / trials >= 0.99


def test_reduce_examples():
    assert reduce_window_ed((1, 2, 3, 4, 2, 5), 4, 3, SortSolver()) == [1, 0, 1]
    assert reduce_window_ed((2, 5, 2, 3, 4, 1), 4, 3, SortSolver()) == [0, 1, 1]
    # shared middle x_3..x_4 = (7, 7) is duplicated
    assert reduce_window_ed((1, 2, 7, 7, 3, 4), 4, 3, SortSolver()) == [0, 0, 0]
    with pytest.raises(ValueError):
        reduce_window_ed((1, 2, 3), 2, 2, SortSolver())


def test_reduce_step_matches_oracle(rnd):
    for _ in range(1000):
        n = rnd.randint(2, 40)
        m = rnd.randint(1, n - 1)
        x = random_input(rnd, n, length=n + m - 1, alphabet=rnd.randint(n, 4 * n))
        assert reduce_window_ed(x, n, m, make_solver(rnd.choice(["sort", "hash"]))) == oracle_ed(x, n)


def test_full_reduction_examples():
    assert ed_sliding_via_reduction((1, 2, 1, 3, 2), 3, SortSolver()) == [0, 1, 1]


def test_full_reduction_matches_oracle(rnd):
    for _ in range(1500):
        n = rnd.randint(1, 70)
        x = random_input(rnd, n, alphabet=rnd.choice([n, 2 * n, 8 * n, 64 * n]))
        assert ed_sliding_via_reduction(x, n, make_solver(rnd.choice(["sort", "hash"]))) == oracle_ed(x, n)


def test_planted_pairs_exhaustive():
    n = 12
    for p in range(2 * n - 1):
        for q in range(p + 1, 2 * n - 1):
            x = generate(GenSpec("planted_duplicate", n, seed=p * 31 + q, positions=(p, q))).data
            want = oracle_ed(x, n)
            assert ed_sliding_via_reduction(x, n) == want
            assert avg_case_ed_sliding(x, n) == want


def test_views_map_back_to_input():
    x = list(range(100, 140))
    side = _View(x, 3, 5, 20)  # positions 0..2 -> 5..7, 3..5 -> 20..22
    assert gather(side, 0, 6) == [105, 106, 107, 120, 121, 122]
    inner = _View(side, 2, 1, 3)  # 0..1 -> side 1..2, 2..3 -> side 3..4
    assert gather(inner, 0, 4) == [106, 107, 120, 121]
    assert gather(inner, 1, 3) == [107, 120]


def test_reduction_recursion_depth_and_bookkeeping():
    n = 1024
    x = generate(GenSpec("all_distinct", n, seed=5)).data
    stats = ReductionStats()
    m = CostMeter()
    assert ed_sliding_via_reduction(x, n, SortSolver(), m, stats=stats) == [1] * n
    assert stats.max_depth <= math.ceil(math.log2(n))
    assert m.peaks["book"] <= 16 * math.log2(n)


def test_one_sided_noise_only_misses_duplicates(rnd):
    for trial in range(300):
        n = rnd.randint(9, 60)
        x = random_input(rnd, n, alphabet=rnd.choice([n, 4 * n, 16 * n]))
        solver = OneSidedNoise(SortSolver(), eps=0.3, seed=trial)
        got = ed_sliding_via_reduction(x, n, solver, votes=1)
        for g, want in zip(got, oracle_ed(x, n)):
            assert g >= want  # never a 0 where the truth is 1


def test_majority_votes_repair_noise(rnd):
    wrong = 0
    for trial in range(60):
        n = rnd.randint(16, 64)
        x = random_input(rnd, n, alphabet=4 * n)
        solver = OneSidedNoise(SortSolver(), eps=0.2, seed=trial)
        got = ed_sliding_via_reduction(x, n, solver, randomized=True)
        wrong += sum(a != b for a, b in zip(got, oracle_ed(x, n)))
    assert wrong == 0
    assert majority_votes(1024) % 2 == 1


def test_solver_bookkeeping():
    s = HashSolver()
    m = CostMeter()
    s.solve([1, 2, 3], m)
    s.solve([1, 1], m)
    assert s.calls == 2
    assert s.cost == m.cost
    with pytest.raises(ValueError):
        make_solver("quantum")
    with pytest.raises(ValueError):
        OneSidedNoise(SortSolver(), 0.7)
    assert BASE_WINDOW == 8
