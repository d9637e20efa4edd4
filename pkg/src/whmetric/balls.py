"""Exact sizes of weighted-Hamming spheres and balls."""

from __future__ import annotations

import itertools
from math import comb

from whmetric.metric import BlockStructure, TWeight


def lambda_set(s: int, bs: BlockStructure) -> list[TWeight]:
    """All T-weights of weighted weight exactly ``s``, in lexicographic order."""
    if s < 0:
        return []
    out: list[TWeight] = []
    lengths, scales = bs.block_lengths, bs.scaling_factors

    def rec(idx: int, remaining: int, prefix: list[int]) -> None:
        if idx == bs.m:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        lam = scales[idx]
        for w in range(min(lengths[idx], remaining // lam) + 1):
            prefix.append(w)
            rec(idx + 1, remaining - w * lam, prefix)
            prefix.pop()

    rec(0, s, [])
    return out


def all_tweights(bs: BlockStructure) -> list[TWeight]:
    """Every T-weight, lexicographic."""
    return list(itertools.product(*(range(n + 1) for n in bs.block_lengths)))


def tweight_count(q: int, bs: BlockStructure, w: TWeight) -> int:
    """Number of vectors in F_q^n with T-weight ``w``."""
    out = 1
    for n, wl in zip(bs.block_lengths, w):
        out *= comb(n, wl) * (q - 1) ** wl
    return out


def sphere_size(q: int, bs: BlockStructure, s: int) -> int:
    return sum(tweight_count(q, bs, w) for w in lambda_set(s, bs))


def sphere_sizes(q: int, bs: BlockStructure, r: int) -> list[int]:
    """``[|S_0|, ..., |S_r|]`` by block-wise convolution.

    Each block contributes the polynomial ``sum_w C(n, w) (q-1)^w x^(lam*w)``;
    their product, truncated at degree ``r``, counts vectors by weight.
    """
    if r < 0:
        return []
    table = [1] + [0] * r
    for n, lam in bs.blocks:
        block = [comb(n, w) * (q - 1) ** w for w in range(n + 1)]
        nxt = [0] * (r + 1)
        for s, cnt in enumerate(table):
            if not cnt:
                continue
            for w, bc in enumerate(block):
                t = s + lam * w
                if t > r:
                    break
                nxt[t] += cnt * bc
        table = nxt
    return table


def ball_size(q: int, bs: BlockStructure, r: int) -> int:
    """``|B_q(n, r, lambda)|``; exact, arbitrary precision."""
    if r < 0:
        return 0
    return sum(sphere_sizes(q, bs, min(r, bs.max_weight)))
