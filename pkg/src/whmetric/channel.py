"""Parallel q-ary symmetric channels, likelihood and distance decoders, simulation.

Randomness comes from numpy's PCG64 generator.  Trials are processed in
fixed-size batches and batch ``b`` draws from ``default_rng([seed, b])``,
so results depend only on ``(seed, trials)`` and not on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field as dc_field
from typing import Iterator, Literal, Sequence

import numpy as np
import numpy.typing as npt

from whmetric.code import (
    AMBIENT_BUDGET,
    CODEBOOK_BUDGET,
    LinearCode,
    ambient_chunks,
    codebook,
    min_wh_distance,
    random_code,
    tau,
)
from whmetric.errors import InvalidCrossover, LengthMismatch
from whmetric.field import Field, IntMatrix
from whmetric.metric import BlockStructure, real_scalings, t_weights, wh_weights

REL_TOL = 1e-12
BATCH = 1024

Decoder = Literal["ml", "wh_real", "wh_integer"]
CodewordSet = frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class ChannelSpec:
    """Independent q-ary symmetric channels, one per block."""

    rhos: tuple[float, ...]
    bs: BlockStructure
    q: int

    def __post_init__(self) -> None:
        rhos = tuple(float(r) for r in self.rhos)
        if len(rhos) != self.bs.m:
            raise InvalidCrossover(f"{len(rhos)} crossover probabilities for {self.bs.m} blocks")
        for rho in rhos:
            if not 0.0 < rho * self.q < self.q - 1:
                raise InvalidCrossover(f"crossover probability {rho} outside (0, {1 - 1 / self.q:g})")
        object.__setattr__(self, "rhos", rhos)

    @property
    def log_error(self) -> npt.NDArray[np.float64]:
        """Per-block log-probability of one specific wrong symbol."""
        return np.log(np.asarray(self.rhos) / (self.q - 1))

    @property
    def log_correct(self) -> npt.NDArray[np.float64]:
        return np.log1p(-np.asarray(self.rhos))

    def real_weights(self) -> list[float]:
        return real_scalings(self.rhos, self.q)


@dataclass
class SimulationStats:
    trials: int = 0
    word_errors: int = 0
    decode_failures: int = 0
    empirical_wer: float = 0.0
    per_block_symbol_error_rate: list[float] = dc_field(default_factory=list)
    seed: int = 0

    @property
    def correct(self) -> int:
        return self.trials - self.word_errors - self.decode_failures

    def as_dict(self) -> dict:
        return asdict(self)


# -- likelihoods -------------------------------------------------------------


def log_pattern_probability(e: npt.ArrayLike, spec: ChannelSpec) -> npt.NDArray[np.float64] | float:
    """Natural log of ``P(r | c)`` for error pattern(s) ``e = r - c``."""
    e = np.asarray(e)
    if e.shape[-1] != spec.bs.n:
        raise LengthMismatch(f"error pattern length {e.shape[-1]} != n = {spec.bs.n}")
    tw = t_weights(e, spec.bs)
    lengths = np.asarray(spec.bs.block_lengths)
    out = tw @ spec.log_error + (lengths - tw) @ spec.log_correct
    return float(out) if np.ndim(out) == 0 else out


def pattern_probability(e: npt.ArrayLike, spec: ChannelSpec) -> npt.NDArray[np.float64] | float:
    return np.exp(log_pattern_probability(e, spec))


# -- channel -----------------------------------------------------------------


def channel_errors(shape: tuple[int, ...], spec: ChannelSpec, rng: np.random.Generator) -> IntMatrix:
    """Additive error patterns: each symbol of block l is replaced w.p. rho_l by a uniform other symbol."""
    rho = np.repeat(np.asarray(spec.rhos), spec.bs.block_lengths)
    hit = rng.random(shape) < rho
    shift = rng.integers(1, spec.q, size=shape, dtype=np.int64)
    return np.where(hit, shift, 0)


def transmit(c: npt.ArrayLike, spec: ChannelSpec, rng: np.random.Generator) -> IntMatrix:
    c = np.asarray(c, dtype=np.int64)
    if c.shape[-1] != spec.bs.n:
        raise LengthMismatch(f"word length {c.shape[-1]} != n = {spec.bs.n}")
    return (c + channel_errors(c.shape, spec, rng)) % spec.q


# -- decoders ----------------------------------------------------------------


def block_distances(words: IntMatrix, received: IntMatrix, bs: BlockStructure) -> IntMatrix:
    """Per-block Hamming distances, shape ``(len(received), len(words), m)``."""
    diff = (received[:, None, :] != words[None, :, :]).astype(np.int64)
    return np.stack([blk.sum(axis=-1) for blk in bs.split(diff)], axis=-1)


def _optimal_mask(scores: npt.NDArray[np.float64], maximize: bool, exact: bool) -> npt.NDArray[np.bool_]:
    best = scores.max(axis=1, keepdims=True) if maximize else scores.min(axis=1, keepdims=True)
    if exact:
        return scores == best
    return np.abs(scores - best) <= REL_TOL * np.maximum(np.abs(best), 1.0)


def ml_mask(words: IntMatrix, received: IntMatrix, spec: ChannelSpec) -> npt.NDArray[np.bool_]:
    """Boolean ``(batch, codewords)`` mask of the likelihood-maximising codewords."""
    dist = block_distances(words, received, spec.bs)
    lengths = np.asarray(spec.bs.block_lengths)
    loglik = dist @ spec.log_error + (lengths - dist) @ spec.log_correct
    return _optimal_mask(loglik, maximize=True, exact=False)


def wh_mask(
    words: IntMatrix, received: IntMatrix, bs: BlockStructure, weights: Sequence[float]
) -> npt.NDArray[np.bool_]:
    """Mask of codewords minimising ``sum_l weights_l * d_H(r_l, c_l)``."""
    dist = block_distances(words, received, bs)
    exact = all(float(w).is_integer() for w in weights)
    w = np.asarray(weights, dtype=np.int64 if exact else np.float64)
    return _optimal_mask(dist @ w, maximize=False, exact=exact)


def _as_set(words: IntMatrix, mask: npt.NDArray[np.bool_]) -> CodewordSet:
    return frozenset(tuple(int(x) for x in c) for c in words[mask])


def ml_decode(code: LinearCode, r: npt.ArrayLike, spec: ChannelSpec, budget: int = CODEBOOK_BUDGET) -> CodewordSet:
    words = codebook(code, budget)
    r = np.asarray(r, dtype=np.int64).reshape(1, -1)
    return _as_set(words, ml_mask(words, r, spec)[0])


def wh_decode(
    code: LinearCode, r: npt.ArrayLike, weights: Sequence[float], budget: int = CODEBOOK_BUDGET
) -> CodewordSet:
    words = codebook(code, budget)
    r = np.asarray(r, dtype=np.int64).reshape(1, -1)
    return _as_set(words, wh_mask(words, r, code.bs, weights)[0])


# -- guarantees --------------------------------------------------------------


def coverage_check(
    code: LinearCode, spec: ChannelSpec, p_threshold: float, ambient_budget: int = AMBIENT_BUDGET
) -> tuple[bool, IntMatrix | None]:
    """Does every error pattern with probability >= ``p_threshold`` have weight <= tau?

    The witness is the most likely violating pattern (first in lexicographic
    order among equals), or ``None``.
    """
    radius = tau(code)
    witness, witness_lp = None, -math.inf
    log_thr = math.log(p_threshold) if p_threshold > 0 else -math.inf
    for errs in ambient_chunks(code.q, code.n, ambient_budget):
        lp = log_pattern_probability(errs, spec)
        bad = (lp >= log_thr) & (wh_weights(errs, code.bs) > radius)
        if bad.any():
            idx = np.flatnonzero(bad)
            i = idx[np.argmax(lp[idx])]
            if lp[i] > witness_lp:
                witness, witness_lp = errs[i].copy(), lp[i]
    return witness is None, witness


# -- simulation --------------------------------------------------------------


@dataclass
class TrialBatch:
    sent: IntMatrix
    received: IntMatrix
    mask: npt.NDArray[np.bool_]
    sent_index: npt.NDArray[np.int64]

    @property
    def error_support(self) -> npt.NDArray[np.int64]:
        return (self.received != self.sent).astype(np.int64)

    def outcome(self) -> npt.NDArray[np.int64]:
        """0 = unique and correct, 1 = unique and wrong, 2 = tie."""
        size = self.mask.sum(axis=1)
        hit = self.mask[np.arange(len(self.mask)), self.sent_index]
        return np.where(size > 1, 2, np.where(hit, 0, 1))


def _decoder_weights(code: LinearCode, spec: ChannelSpec, decoder: Decoder, weights: Sequence[float] | None):
    if decoder == "wh_real":
        return spec.real_weights()
    if decoder == "wh_integer":
        return list(weights) if weights is not None else list(code.bs.scaling_factors)
    if decoder == "ml":
        return None
    raise ValueError(f"unknown decoder {decoder!r}")


def run_trials(
    code: LinearCode,
    spec: ChannelSpec,
    decoder: Decoder,
    trials: int,
    seed: int,
    weights: Sequence[float] | None = None,
    budget: int = CODEBOOK_BUDGET,
) -> Iterator[TrialBatch]:
    """Transmit uniformly random codewords and decode them, batch by batch."""
    if spec.bs != code.bs:
        raise LengthMismatch("channel and code block structures differ")
    w = _decoder_weights(code, spec, decoder, weights)
    words = codebook(code, budget)
    for b, start in enumerate(range(0, trials, BATCH)):
        size = min(BATCH, trials - start)
        rng = np.random.default_rng([seed, b])
        idx = rng.integers(0, len(words), size=size)
        sent = words[idx]
        received = (sent + channel_errors(sent.shape, spec, rng)) % code.q
        if decoder == "ml":
            mask = ml_mask(words, received, spec)
        else:
            mask = wh_mask(words, received, code.bs, w)
        yield TrialBatch(sent, received, mask, idx)


def simulate(
    code: LinearCode,
    spec: ChannelSpec,
    decoder: Decoder,
    trials: int,
    seed: int,
    weights: Sequence[float] | None = None,
    budget: int = CODEBOOK_BUDGET,
) -> SimulationStats:
    """Monte-Carlo word error rate.

    Ties are reported as ``decode_failures`` and count towards
    ``empirical_wer`` even when they contain the sent codeword.
    """
    stats = SimulationStats(trials=trials, seed=seed)
    flips = np.zeros(code.bs.m, dtype=np.int64)
    for batch in run_trials(code, spec, decoder, trials, seed, weights, budget):
        out = batch.outcome()
        stats.word_errors += int((out == 1).sum())
        stats.decode_failures += int((out == 2).sum())
        flips += t_weights(batch.error_support, code.bs).sum(axis=0)
    if trials:
        stats.empirical_wer = (stats.word_errors + stats.decode_failures) / trials
        stats.per_block_symbol_error_rate = [
            float(f) / (trials * n) for f, n in zip(flips, code.bs.block_lengths)
        ]
    else:
        stats.per_block_symbol_error_rate = [0.0] * code.bs.m
    return stats


def gv_experiment(
    fld: Field, bs: BlockStructure, k: int, d_target: int, trials: int, seed: int
) -> tuple[float, list[int]]:
    """Fraction of uniformly random ``k``-dimensional codes reaching ``d_target``.

    Code ``t`` is drawn from ``default_rng([seed, t])``.
    """
    dists = [
        min_wh_distance(random_code(fld, bs, k, np.random.default_rng([seed, t])))
        for t in range(trials)
    ]
    frac = sum(d >= d_target for d in dists) / trials if trials else 0.0
    return frac, dists

