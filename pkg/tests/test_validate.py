import numpy as np
import pytest

from slidewin.oracle import oracle_fk
from slidewin.validate import (birthday_stats, f0_all_in_range, first_duplicate_draws,
                               unique_prefix_positions, window_f0_profile)


def exact_birthday(n):
    """P(X = x), X = index of the first repeating draw.

    X >= x iff the first x-1 draws are distinct: prod_{i=1}^{x-2} (1 - i/n).
    """
    tail = [1.0, 1.0]  # P(X >= 1), P(X >= 2)
    for x in range(3, n + 3):
        tail.append(tail[-1] * (1 - (x - 2) / n))
    probs = [tail[i] - (tail[i + 1] if i + 1 < len(tail) else 0.0) for i in range(len(tail))]
    return np.arange(1, len(probs) + 1), np.array(probs)


def test_f0_profile_matches_oracle(rnd):
    for _ in range(100):
        n = rnd.randint(1, 30)
        x = [rnd.randint(1, n) for _ in range(2 * n - 1)]
        assert window_f0_profile(x, n) == oracle_fk(x, n, 0)


def test_f0_range_check():
    assert f0_all_in_range([1, 2, 3, 4, 1, 1, 2], 4, 0.5, 1.0)
    assert not f0_all_in_range([1, 1, 1, 1, 1, 1, 1], 4)


def test_unique_positions():
    # j < n (1-based) -> first n-1 symbols; 3 and 5 are unique in x
    x = [3, 1, 5, 1, 2, 2, 7]
    assert unique_prefix_positions(x, 4) == 2


def test_first_duplicate_support():
    draws = first_duplicate_draws(8, 2000, seed=1)
    assert draws.min() >= 2
    assert draws.max() <= 9


@pytest.mark.parametrize("n", [16, 64, 256])
def test_birthday_simulation_matches_exact_distribution(n):
    xs, probs = exact_birthday(n)
    mean_sq = float(np.sum(xs ** 2 * probs))
    stats = birthday_stats(n, 40000, seed=n)
    assert stats["mean_square"] == pytest.approx(mean_sq, rel=0.03)
    assert stats["mean"] == pytest.approx(float(np.sum(xs * probs)), rel=0.02)
    assert mean_sq <= 4 * n
