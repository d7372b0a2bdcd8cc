import pytest
from hypothesis import given, settings, strategies as st

from slidewin.oracle import (oracle_ed, oracle_f0_mod2, oracle_fk, oracle_order,
                             window_frequency)

X = (1, 2, 1, 3, 2)


def test_fk_examples():
    assert oracle_fk(X, 3, 0) == [2, 3, 3]
    # window (1,2,1): 2^2 + 1^2
    assert oracle_fk(X, 3, 2) == [5, 3, 3]
    assert oracle_fk((4,) * 9, 5, 1) == [5] * 5


def test_ed_examples():
    assert oracle_ed(X, 3) == [0, 1, 1]
    assert oracle_ed(tuple(range(1, 10)), 5) == [1] * 5
    assert oracle_ed((2,) * 9, 5) == [0] * 5


def test_order_examples():
    assert oracle_order((3, 1, 4, 1, 5), 3, 3) == [4, 4, 5]
    assert oracle_order((3, 1, 4, 1, 5), 3, 2) == [3, 1, 4]
    assert oracle_order((6,) * 7, 4, 1) == [6] * 4
    assert oracle_order((5, 5, 4, 2, 3, 1, 1, 1, 1), 5, 3)[:3] == [4, 3, 2]


def test_errors():
    with pytest.raises(ValueError):
        oracle_fk(X, 3, 0, t=4)
    with pytest.raises(ValueError):
        oracle_fk(X, 6, 0)
    with pytest.raises(ValueError):
        oracle_order(X, 3, 4)
    with pytest.raises(ValueError):
        oracle_ed(X, 0)


windows = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, max(1, n)), min_size=2 * n - 1,
                                             max_size=2 * n - 1)))


@settings(max_examples=200, deadline=None)
@given(windows)
def test_oracle_cross_relations(case):
    n, x = case
    f0 = oracle_fk(x, n, 0)
    assert [v % 2 for v in f0] == oracle_f0_mod2(x, n)
    assert oracle_ed(x, n) == [int(v == n) for v in f0]
    assert oracle_fk(x, n, 1) == [n] * n
    for i, v in enumerate(oracle_order(x, n, n)):
        assert v in x[i:i + n]


def test_window_frequency():
    assert window_frequency(X, 1, 3, 2) == 1
    assert window_frequency(X, 0, 5, 2) == 2
