"""Brute-force reference computations that share no code with the library."""

from collections import Counter

import numpy as np

from conftest import all_vectors
from whmetric.code import code_from_generator
from whmetric.errors import ZeroCode
from whmetric.field import Field
from whmetric.metric import BlockStructure


def weights(vecs, bs):
    scales = np.repeat(bs.scaling_factors, bs.block_lengths)
    return ((np.asarray(vecs) % 1_000_003 != 0) * scales).sum(axis=-1)


def tweights(vecs, bs):
    nz = np.asarray(vecs) != 0
    edges = np.cumsum((0,) + tuple(bs.block_lengths))
    return np.stack([nz[..., a:b].sum(axis=-1) for a, b in zip(edges[:-1], edges[1:])], axis=-1)


def span(g, q):
    g = np.asarray(g, dtype=np.int64)
    msgs = all_vectors(q, g.shape[0])
    return np.unique((msgs @ g) % q, axis=0)


def dual_vectors(g, q):
    g = np.asarray(g, dtype=np.int64)
    vecs = all_vectors(q, g.shape[1])
    return vecs[~((vecs @ g.T) % q).any(axis=1)]


def min_distance(g, q, bs):
    words = span(g, q)
    w = weights(words[words.any(axis=1)], bs)
    return int(w.min())


def enumerator(vecs, bs):
    return dict(Counter(tuple(int(x) for x in t) for t in tweights(vecs, bs)))


def tau(g, q, bs):
    words = span(g, q)
    amb = all_vectors(q, bs.n)
    w_r = weights(amb, bs)
    best = None
    for c in words[words.any(axis=1)]:
        val = int(np.maximum(w_r, weights((c - amb) % q, bs)).min())
        best = val if best is None else min(best, val)
    return best - 1


def random_small_code(rng, max_ambient=1 << 16, max_codebook=1 << 7):
    """Random code with q^n <= max_ambient and q^k <= max_codebook."""
    while True:
        q = int(rng.choice([2, 3, 5, 7]))
        max_n = int(np.floor(np.log(max_ambient) / np.log(q) + 1e-9))
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(1, min(n, 3) + 1))
        cuts = np.sort(rng.choice(np.arange(1, n), size=m - 1, replace=False)) if m > 1 else []
        lengths = np.diff(np.concatenate([[0], cuts, [n]])).astype(int)
        scales = rng.integers(1, 6, size=m)
        bs = BlockStructure(tuple(lengths), tuple(scales))
        max_k = int(np.floor(np.log(max_codebook) / np.log(q) + 1e-9))
        k = int(rng.integers(1, min(n, max_k) + 1))
        g = rng.integers(0, q, size=(k, n))
        try:
            return code_from_generator(Field(q), bs, g), g
        except ZeroCode:
            continue
