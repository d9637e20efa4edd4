from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from whmetric.errors import LpInfeasible, LpUnbounded
from whmetric.lp import maximize


def scipy_max(c, a, b):
    res = linprog(-np.asarray(c, float), A_ub=np.asarray(a, float), b_ub=np.asarray(b, float),
                  bounds=[(0, None)] * len(c), method="highs")
    return res


def test_textbook_example():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.value == 36
    assert res.x == [2, 6]
    assert all(isinstance(v, Fraction) for v in res.x)


def test_fractional_optimum():
    res = maximize([1, 1], [[3, 1], [1, 3]], [1, 1])
    assert res.value == Fraction(1, 2)
    assert res.x == [Fraction(1, 4), Fraction(1, 4)]


def test_negative_rhs_uses_phase_one():
    # x + y >= 2 written as -x - y <= -2, x <= 3, y <= 1
    res = maximize([-1, -2], [[-1, -1], [1, 0], [0, 1]], [-2, 3, 1])
    assert res.value == -2
    assert res.x == [2, 0]


def test_infeasible():
    with pytest.raises(LpInfeasible):
        maximize([1], [[1], [-1]], [1, -2])


def test_unbounded():
    with pytest.raises(LpUnbounded):
        maximize([1, 1], [[1, -1]], [1])


def test_degenerate_does_not_cycle():
    # Beale's cycling example (maximisation form)
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    a = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    res = maximize(c, a, [0, 0, 1])
    assert res.value == Fraction(1, 20)


def test_random_lps_against_scipy():
    # HiGHS sometimes labels unbounded problems "infeasible", so feasibility
    # is checked separately with a zero objective.
    rng = np.random.default_rng(0)
    checked = 0
    for _ in range(200):
        n, m = rng.integers(1, 7), rng.integers(1, 7)
        a = rng.integers(-5, 6, size=(m, n)).tolist()
        b = rng.integers(-3, 10, size=m).tolist()
        c = rng.integers(-4, 6, size=n).tolist()
        feasible = scipy_max([0] * n, a, b).status == 0
        if not feasible:
            with pytest.raises(LpInfeasible):
                maximize(c, a, b)
            continue
        ref = scipy_max(c, a, b)
        if ref.status != 0:
            with pytest.raises(LpUnbounded):
                maximize(c, a, b)
            continue
        res = maximize(c, a, b)
        assert float(res.value) == pytest.approx(-ref.fun, rel=1e-9, abs=1e-9)
        for row, rhs in zip(a, b):
            assert sum(r * v for r, v in zip(row, res.x)) <= rhs
        assert all(v >= 0 for v in res.x)
        checked += 1
    assert checked > 50


def test_shape_errors():
    with pytest.raises(ValueError):
        maximize([1, 1], [[1, 1]], [1, 2])
    with pytest.raises(ValueError):
        maximize([1, 1], [[1]], [1])
