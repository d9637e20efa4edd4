"""Upper and lower bounds on the dimension of weighted-Hamming codes.

All arithmetic is exact.  ``floor(log_q x)`` is always computed as the largest
``k`` with ``q**k <= x``; no floating-point logarithm is ever taken.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterable, Mapping

from whmetric.balls import all_tweights, ball_size
from whmetric.errors import InvalidDimension, InvalidDistance, NonIntegralTransform
from whmetric.lp import maximize
from whmetric.metric import BlockStructure, TWeight, weight_of_tweight


def floor_log(q: int, x: int | Fraction) -> int:
    """Largest ``k >= 0`` with ``q**k <= x``; requires ``x >= 1``."""
    if q < 2:
        raise ValueError(f"floor_log needs q >= 2, got {q}")
    if x < 1:
        raise ValueError(f"floor_log needs x >= 1, got {x}")
    k, p = 0, q
    while p <= x:
        k += 1
        p *= q
    return k


def _check_distance(bs: BlockStructure, d: int, upper: int | None = None) -> None:
    upper = bs.max_weight if upper is None else upper
    if not 1 <= d <= upper:
        raise InvalidDistance(f"distance {d} outside [1, {upper}]")


def singleton_bound(q: int, bs: BlockStructure, d: int) -> int:
    _check_distance(bs, d)
    s, _ = bs.sorted()
    covered = 0  # sum of n*lam over the first l_star blocks
    l_star = 0
    for idx in range(s.m - 1):
        nxt = covered + s.block_lengths[idx] * s.scaling_factors[idx]
        if nxt >= d:
            break
        covered, l_star = nxt, idx + 1
    rest = sum(s.block_lengths[l_star:])
    return rest - (d - 1 - covered) // s.scaling_factors[l_star]


def mds_wh_distance(q: int, bs: BlockStructure, k: int) -> int:
    """Weighted-Hamming distance of any ``[n, k]`` MDS code under ``bs``."""
    if not 1 <= k <= bs.n:
        raise InvalidDimension(f"dimension {k} outside [1, {bs.n}]")
    s, _ = bs.sorted()
    budget = bs.n - k + 1  # Hamming distance of the MDS code
    dist = 0
    for n_l, lam in s.blocks:
        take = min(n_l, budget)
        dist += take * lam
        budget -= take
        if budget == 0:
            break
    return dist


def hamming_bound(q: int, bs: BlockStructure, d: int) -> int:
    _check_distance(bs, d, bs.max_weight + 1)
    ball = ball_size(q, bs, (d - 1) // 2)
    total = q**bs.n
    k = 0
    while q ** (k + 1) * ball <= total:
        k += 1
    return k


def gv_bound(q: int, bs: BlockStructure, d: int) -> int:
    """Smallest ``k`` with ``q**k * |B(d-1)| >= q**n``: a code of this dimension exists."""
    _check_distance(bs, d)
    ball = ball_size(q, bs, d - 1)
    total = q**bs.n
    k = 0
    while q**k * ball < total:
        k += 1
    return k


def plotkin_value(q: int, bs: BlockStructure, d: int) -> Fraction | None:
    _check_distance(bs, d)
    big_m = bs.max_weight
    if q * d <= (q - 1) * big_m:
        return None
    return Fraction(q * d, q * d - (q - 1) * big_m)


def plotkin_bound(q: int, bs: BlockStructure, d: int) -> int | None:
    """``None`` when ``d <= (q-1) M / q`` and the bound does not apply."""
    value = plotkin_value(q, bs, d)
    return None if value is None else floor_log(q, value)


# -- Krawtchouk / MacWilliams -----------------------------------------------


@lru_cache(maxsize=None)
def krawtchouk(q: int, n_block: int, j: int, i: int) -> int:
    if not (0 <= i <= n_block and 0 <= j <= n_block):
        raise ValueError(f"need 0 <= i, j <= {n_block}, got i={i}, j={j}")
    return sum(
        comb(n_block - i, j - s) * comb(i, s) * (q - 1) ** (j - s) * (-1) ** s
        for s in range(j + 1)
    )


def _kernel(q: int, bs: BlockStructure, j: TWeight, i: TWeight) -> int:
    return prod(krawtchouk(q, n, jl, il) for n, jl, il in zip(bs.block_lengths, j, i))


def macwilliams_transform(
    enumerator: Mapping[TWeight, int], q: int, bs: BlockStructure, code_size: int
) -> dict[TWeight, int]:
    """T-weight enumerator of the dual code; zero entries are dropped."""
    if sum(enumerator.values()) != code_size:
        raise NonIntegralTransform(
            f"enumerator sums to {sum(enumerator.values())}, expected {code_size}"
        )
    out: dict[TWeight, int] = {}
    support = [(tuple(i), a) for i, a in enumerator.items() if a]
    for j in all_tweights(bs):
        total = sum(_kernel(q, bs, j, i) * a for i, a in support)
        count, rem = divmod(total, code_size)
        if rem or count < 0:
            raise NonIntegralTransform(f"dual count at {j} is {Fraction(total, code_size)}")
        if count:
            out[j] = count
    return out


# -- LP bound ---------------------------------------------------------------


@lru_cache(maxsize=512)
def lp_value(q: int, bs: BlockStructure, d: int) -> Fraction:
    """Exact optimum of the Delsarte-style LP on the T-weight enumerator.

    ``A_0 = 1`` is substituted, and variables forced to zero (weights
    ``1..d-1``) are dropped, so the remaining LP is
    ``max sum A_i  s.t.  -sum_i K_j(i) A_i <= K_j(0)`` for every ``j``.
    """
    _check_distance(bs, d)
    lam = all_tweights(bs)
    zero = tuple([0] * bs.m)
    free = [i for i in lam if i != zero and weight_of_tweight(i, bs) >= d]
    if not free:
        return Fraction(1)
    a_ub = [[-_kernel(q, bs, j, i) for i in free] for j in lam]
    b_ub = [_kernel(q, bs, j, zero) for j in lam]
    res = maximize([1] * len(free), a_ub, b_ub)
    return 1 + res.value


def lp_bound(q: int, bs: BlockStructure, d: int) -> tuple[Fraction, int]:
    value = lp_value(q, bs, d)
    return value, floor_log(q, value)


# -- tables -----------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    q: int
    blocks: str
    d: int
    singleton_k: int
    hamming_k: int
    gv_k: int
    plotkin_k: int | None
    lp_k: int
    lp_value: Fraction

    def as_dict(self) -> dict:
        out = asdict(self)
        out["lp_value"] = str(self.lp_value)
        return out

    def csv_row(self) -> str:
        plot = "" if self.plotkin_k is None else str(self.plotkin_k)
        return f"{self.d},{self.singleton_k},{self.hamming_k},{self.gv_k},{plot},{self.lp_k}"


CSV_HEADER = "d,singleton,hamming,gv,plotkin,lp"


def bound_report(q: int, bs: BlockStructure, d: int) -> BoundReport:
    value, lp_k = lp_bound(q, bs, d)
    return BoundReport(
        q=q,
        blocks=str(bs),
        d=d,
        singleton_k=singleton_bound(q, bs, d),
        hamming_k=hamming_bound(q, bs, d),
        gv_k=gv_bound(q, bs, d),
        plotkin_k=plotkin_bound(q, bs, d),
        lp_k=lp_k,
        lp_value=value,
    )


def bounds_table(q: int, bs: BlockStructure, d_range: Iterable[int]) -> list[BoundReport]:
    return [bound_report(q, bs, d) for d in d_range]


def upper_bounds(report: BoundReport) -> dict[str, int]:
    out = {"singleton": report.singleton_k, "hamming": report.hamming_k, "lp": report.lp_k}
    if report.plotkin_k is not None:
        out["plotkin"] = report.plotkin_k
    return out

