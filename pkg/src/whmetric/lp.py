"""Dense exact-rational simplex method.

Solves ``maximize c.x  s.t.  A x <= b,  x >= 0`` in exact rationals with
Bland's rule, so it terminates without cycling and returns the exact
optimum as ``fractions.Fraction``.  Rows with negative right-hand side get an artificial variable and
are handled by a phase-1 pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from whmetric.errors import LpInfeasible, LpUnbounded

try:  # GMP rationals are ~10x faster than Fraction for tableau updates
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Number = int | Fraction


@dataclass
class LPResult:
    value: Fraction
    x: list[Fraction]
    pivots: int


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int) -> None:
        self.rows = rows  # each row: ncols coefficients followed by the rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            row[:] = [v * inv for v in row]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                other[:] = [a - f * b if b else a for a, b in zip(other, row)]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], allowed: int) -> list[Fraction]:
        out = list(cost[:allowed])
        for row, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb:
                for j in range(allowed):
                    if row[j]:
                        out[j] -= cb * row[j]
        return out

    def run(self, cost: Sequence[Fraction], allowed: int) -> None:
        """Maximise ``cost`` over the current basic feasible solution.

        Only columns ``< allowed`` may enter.  Reduced costs are updated
        incrementally after each pivot.
        """
        red = self.reduced_costs(cost, allowed)
        while True:
            enter = next((j for j in range(allowed) if red[j] > 0), None)
            if enter is None:
                return
            leave, best = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                raise LpUnbounded(f"objective unbounded along column {enter}")
            self.pivot(leave, enter)
            prow = self.rows[leave]
            f = red[enter]
            red = [rj - f * pj for rj, pj in zip(red, prow[:allowed])]

    def solution(self, nvars: int) -> list[Fraction]:
        x = [_Q(0)] * nvars
        for row, b in zip(self.rows, self.basis):
            if b < nvars:
                x[b] = row[-1]
        return x


def maximize(c: Sequence[Number], a_ub: Sequence[Sequence[Number]], b_ub: Sequence[Number]) -> LPResult:
    """Exact optimum of ``max c.x`` subject to ``a_ub x <= b_ub``, ``x >= 0``."""
    n = len(c)
    m = len(a_ub)
    if len(b_ub) != m:
        raise ValueError("a_ub and b_ub have different row counts")
    neg = [i for i in range(m) if b_ub[i] < 0]
    n_art = len(neg)
    ncols = n + m + n_art
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_of_row = {r: n + m + t for t, r in enumerate(neg)}
    for i in range(m):
        if len(a_ub[i]) != n:
            raise ValueError(f"row {i} has {len(a_ub[i])} coefficients, expected {n}")
        row = [_Q(v) for v in a_ub[i]] + [_Q(0)] * (m + n_art) + [_Q(b_ub[i])]
        row[n + i] = _Q(1)
        if i in art_of_row:
            row = [-v for v in row]
            row[art_of_row[i]] = _Q(1)
            basis.append(art_of_row[i])
        else:
            basis.append(n + i)
        rows.append(row)
    tab = _Tableau(rows, basis, ncols)

    if n_art:
        phase1 = [_Q(0)] * (n + m) + [_Q(-1)] * n_art
        tab.run(phase1, ncols)
        infeas = sum(row[-1] for row, b in zip(tab.rows, tab.basis) if b >= n + m)
        if infeas > 0:
            raise LpInfeasible("no point satisfies the constraints")
        # drive zero-level artificials out of the basis
        for r in range(len(tab.rows) - 1, -1, -1):
            if tab.basis[r] < n + m:
                continue
            col = next((j for j in range(n + m) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
            else:
                tab.pivot(r, col)

    cost = [_Q(v) for v in c] + [_Q(0)] * (m + n_art)
    tab.run(cost, n + m)
    x = [Fraction(int(v.numerator), int(v.denominator)) for v in tab.solution(n)]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(value, x, tab.pivots)
