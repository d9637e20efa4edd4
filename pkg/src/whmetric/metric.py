"""Block structures, T-weights and the weighted-Hamming metric."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np
import numpy.typing as npt

from whmetric.errors import InvalidBlockStructure, InvalidCrossover, LengthMismatch

TWeight = tuple[int, ...]


@dataclass(frozen=True)
class BlockStructure:
    """Coordinate partition into ``m`` consecutive blocks, each with an integer scaling."""

    block_lengths: tuple[int, ...]
    scaling_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths = tuple(int(x) for x in self.block_lengths)
        scales = tuple(int(x) for x in self.scaling_factors)
        if not lengths:
            raise InvalidBlockStructure("need at least one block")
        if len(lengths) != len(scales):
            raise InvalidBlockStructure(
                f"{len(lengths)} block lengths but {len(scales)} scaling factors"
            )
        if any(n < 1 for n in lengths):
            raise InvalidBlockStructure(f"block lengths must be positive, got {lengths}")
        if any(s < 1 for s in scales):
            raise InvalidBlockStructure(f"scaling factors must be positive integers, got {scales}")
        object.__setattr__(self, "block_lengths", lengths)
        object.__setattr__(self, "scaling_factors", scales)

    @classmethod
    def parse(cls, text: str) -> BlockStructure:
        """Parse the ``"n1:l1,n2:l2,..."`` form, e.g. ``"7:1,7:2"``."""
        lengths, scales = [], []
        try:
            for item in text.split(","):
                n, lam = item.strip().split(":")
                lengths.append(int(n))
                scales.append(int(lam))
        except ValueError as exc:
            raise InvalidBlockStructure(f"malformed block string {text!r}") from exc
        return cls(tuple(lengths), tuple(scales))

    def __str__(self) -> str:
        return ",".join(f"{n}:{lam}" for n, lam in self.blocks)

    @property
    def blocks(self) -> list[tuple[int, int]]:
        return list(zip(self.block_lengths, self.scaling_factors))

    @property
    def m(self) -> int:
        return len(self.block_lengths)

    @property
    def n(self) -> int:
        return sum(self.block_lengths)

    @property
    def max_weight(self) -> int:
        """The largest attainable weight ``M``."""
        return sum(n * lam for n, lam in self.blocks)

    @property
    def max_scaling(self) -> int:
        return max(self.scaling_factors)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(np.concatenate([[0], np.cumsum(self.block_lengths)]).tolist())

    @cached_property
    def block_index(self) -> npt.NDArray[np.int64]:
        """Block number of every coordinate."""
        return np.repeat(np.arange(self.m), self.block_lengths)

    @cached_property
    def coordinate_weights(self) -> npt.NDArray[np.int64]:
        """Scaling factor of every coordinate."""
        return np.repeat(np.asarray(self.scaling_factors, dtype=np.int64), self.block_lengths)

    def split(self, v: npt.ArrayLike) -> list[np.ndarray]:
        v = np.asarray(v)
        return [v[..., a:b] for a, b in zip(self.offsets[:-1], self.offsets[1:])]

    def sorted(self) -> tuple[BlockStructure, list[int]]:
        """Blocks reordered by ascending scaling (stable), with the permutation used."""
        order = sorted(range(self.m), key=lambda i: self.scaling_factors[i])
        return (
            BlockStructure(
                tuple(self.block_lengths[i] for i in order),
                tuple(self.scaling_factors[i] for i in order),
            ),
            order,
        )


def _check_length(v: np.ndarray, bs: BlockStructure) -> None:
    if v.shape[-1] != bs.n:
        raise LengthMismatch(f"vector length {v.shape[-1]} does not match block structure n={bs.n}")


def t_weights(vs: npt.ArrayLike, bs: BlockStructure) -> npt.NDArray[np.int64]:
    """Per-block Hamming weights of each row of ``vs`` (shape ``(..., m)``)."""
    vs = np.asarray(vs)
    _check_length(vs, bs)
    nz = (vs != 0).astype(np.int64)
    return np.stack([blk.sum(axis=-1) for blk in bs.split(nz)], axis=-1)


def t_weight(v: npt.ArrayLike, bs: BlockStructure) -> TWeight:
    v = np.asarray(v).reshape(-1)
    return tuple(int(x) for x in t_weights(v, bs))


def wh_weights(vs: npt.ArrayLike, bs: BlockStructure) -> npt.NDArray[np.int64]:
    """Weighted-Hamming weight of each row of ``vs``."""
    vs = np.asarray(vs)
    _check_length(vs, bs)
    return (vs != 0).astype(np.int64) @ bs.coordinate_weights


def wh_weight(v: npt.ArrayLike, bs: BlockStructure) -> int:
    return int(wh_weights(np.asarray(v).reshape(-1), bs))


def wh_distance(x: npt.ArrayLike, y: npt.ArrayLike, bs: BlockStructure) -> int:
    x = np.asarray(x).reshape(-1)
    y = np.asarray(y).reshape(-1)
    if x.shape != y.shape:
        raise LengthMismatch(f"vectors of length {x.size} and {y.size}")
    # Over any field, x - y is nonzero exactly where x != y.
    return wh_weight((x != y).astype(np.int64), bs)


def weight_of_tweight(w: Sequence[int], bs: BlockStructure) -> int:
    return sum(a * lam for a, lam in zip(w, bs.scaling_factors))


# -- channel-derived scalings ------------------------------------------------


def real_scalings(rhos: Sequence[float], q: int) -> list[float]:
    """Log-likelihood-ratio weights ``log((1-rho)/rho) + log(q-1)`` (natural log)."""
    out = []
    for rho in rhos:
        if not 0.0 < rho * q < q - 1:
            raise InvalidCrossover(f"crossover probability {rho} outside (0, {1 - 1 / q:g})")
        out.append(math.log((1.0 - rho) / rho) + math.log(q - 1))
    return out


def optimal_scalings(
    rhos: Sequence[float], q: int, cap: int = 64
) -> tuple[list[float], list[int], float]:
    """Real ML weights and their best integer proportional approximation.

    Returns ``(real_weights, integer_weights, scale_error)``.  The integer
    tuple minimises the worst relative deviation from ``alpha * real_weights``
    over all tuples with entries in ``[1, cap]``; ties go to the smallest sum.

    Only the ratios ``integer / real`` matter.  Once the smallest of those
    ratios is fixed, every other entry is best taken as the smallest integer
    whose ratio is not below it, so scanning each (entry, value) pair as the
    candidate minimum covers every optimum of the exhaustive search.
    """
    real = real_scalings(rhos, q)
    best: tuple[float, int, tuple[int, ...]] | None = None
    for i, ri in enumerate(real):
        for v in range(1, cap + 1):
            low = v / ri
            cand = []
            for j, rj in enumerate(real):
                if j == i:
                    cand.append(v)
                    continue
                # guard against ceil(3.0000000000000004) == 4
                target = low * rj
                c = math.ceil(target - 1e-12 * target)
                cand.append(max(c, 1))
            if max(cand) > cap:
                continue
            g = reduce(math.gcd, cand)
            cand = [c // g for c in cand]
            err = _relative_spread(cand, real)
            key = (round(err, 12), sum(cand), tuple(cand))
            if best is None or key < best:
                best = key
    assert best is not None  # v=1 on the largest weight is always feasible
    integers = list(best[2])
    return real, integers, _relative_spread(integers, real)


def _relative_spread(integers: Sequence[int], real: Sequence[float]) -> float:
    # With beta = 1/alpha, max_l |beta * r_l - 1| is minimised at
    # beta = 2 / (min r + max r), giving (max - min) / (max + min).
    ratios = [a / b for a, b in zip(integers, real)]
    lo, hi = min(ratios), max(ratios)
    return (hi - lo) / (hi + lo)
