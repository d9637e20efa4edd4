"""Linear codes over prime fields with a weighted-Hamming block structure."""

from __future__ import annotations

import itertools
import json
import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Literal

import numpy as np
import numpy.typing as npt

from whmetric.balls import lambda_set
from whmetric.errors import BudgetExceeded, MalformedCodeFile, ZeroCode
from whmetric.field import Field, IntMatrix
from whmetric.metric import BlockStructure, TWeight, t_weights, wh_weights

log = logging.getLogger(__name__)

CODEBOOK_BUDGET = 1 << 24
AMBIENT_BUDGET = 1 << 20
SUPPORT_BUDGET = 1 << 27
_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: Field
    bs: BlockStructure
    generator: IntMatrix
    parity_check: IntMatrix

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.bs.n

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def size(self) -> int:
        return self.q**self.k

    def dual_generator(self) -> IntMatrix:
        return self.parity_check

    def contains(self, v: npt.ArrayLike) -> bool:
        v = self.field.vector(v)
        return not self.field.matmul(self.parity_check, v).any()

    def syndrome(self, v: npt.ArrayLike) -> IntMatrix:
        return self.field.matmul(np.asarray(v), self.parity_check.T)

    def encode(self, messages: npt.ArrayLike) -> IntMatrix:
        return self.field.matmul(messages, self.generator)

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, k={self.k}, blocks={self.bs})"


def _check_width(m: np.ndarray, bs: BlockStructure, what: str) -> None:
    if m.shape[1] != bs.n:
        raise MalformedCodeFile(f"{what} has {m.shape[1]} columns, block structure needs {bs.n}")


def code_from_generator(field: Field, bs: BlockStructure, generator: npt.ArrayLike) -> LinearCode:
    """Build a code from any spanning set; rows are reduced to an RREF basis."""
    g = field.matrix(generator, cols=bs.n)
    _check_width(g, bs, "generator")
    basis = field.row_basis(g)
    if basis.shape[0] == 0:
        raise ZeroCode("generator has rank 0")
    h = field.kernel_basis(basis)
    return LinearCode(field, bs, basis, h)


def code_from_parity_check(field: Field, bs: BlockStructure, parity_check: npt.ArrayLike) -> LinearCode:
    h = field.matrix(parity_check, cols=bs.n)
    _check_width(h, bs, "parity-check matrix")
    g = field.row_basis(field.kernel_basis(h))
    if g.shape[0] == 0:
        raise ZeroCode("parity-check matrix has full column rank; the code is {0}")
    return LinearCode(field, bs, g, field.row_basis(h))


def dual_code(code: LinearCode) -> LinearCode:
    return code_from_generator(code.field, code.bs, code.parity_check)


# -- enumeration -----------------------------------------------------------


def messages(q: int, k: int, start: int, stop: int) -> IntMatrix:
    """Message vectors with lexicographic indices ``start..stop-1`` (first symbol most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def ambient_chunks(q: int, n: int, budget: int = AMBIENT_BUDGET, chunk: int = _CHUNK) -> Iterator[IntMatrix]:
    total = q**n
    if total > budget:
        raise BudgetExceeded(f"q^n = {q}^{n} exceeds the ambient-space budget {budget}")
    for start in range(0, total, chunk):
        yield messages(q, n, start, min(total, start + chunk))


def codeword_chunks(code: LinearCode, budget: int = CODEBOOK_BUDGET, chunk: int = _CHUNK) -> Iterator[IntMatrix]:
    total = code.size
    if total > budget:
        raise BudgetExceeded(f"q^k = {code.q}^{code.k} exceeds the codebook budget {budget}")
    for start in range(0, total, chunk):
        yield code.encode(messages(code.q, code.k, start, min(total, start + chunk)))


def enumerate_codewords(code: LinearCode, budget: int = CODEBOOK_BUDGET) -> Iterator[IntMatrix]:
    """Every codeword once, in lexicographic message order."""
    for block in codeword_chunks(code, budget):
        yield from block


def codebook(code: LinearCode, budget: int = CODEBOOK_BUDGET) -> IntMatrix:
    return np.concatenate(list(codeword_chunks(code, budget)), axis=0)


# -- minimum distance ------------------------------------------------------

Method = Literal["auto", "codebook", "support_enum"]


def min_wh_distance(
    code: LinearCode,
    method: Method = "auto",
    budget: int = CODEBOOK_BUDGET,
    support_budget: int = SUPPORT_BUDGET,
) -> int:
    return min_weight_codeword(code, method, budget, support_budget)[0]


def min_weight_codeword(
    code: LinearCode,
    method: Method = "auto",
    budget: int = CODEBOOK_BUDGET,
    support_budget: int = SUPPORT_BUDGET,
) -> tuple[int, IntMatrix]:
    """Minimum weighted-Hamming distance together with a codeword attaining it."""
    if method == "auto":
        method = "codebook" if code.size <= budget else "support_enum"
    if method == "codebook":
        return _min_by_codebook(code, budget)
    if method == "support_enum":
        return _min_by_supports(code, support_budget)
    raise ValueError(f"unknown method {method!r}")


def _min_by_codebook(code: LinearCode, budget: int) -> tuple[int, IntMatrix]:
    best, witness = None, None
    for words in codeword_chunks(code, budget):
        w = wh_weights(words, code.bs)
        w[~words.any(axis=1)] = np.iinfo(np.int64).max
        i = int(np.argmin(w))
        if best is None or w[i] < best:
            best, witness = int(w[i]), words[i].copy()
    assert best is not None and witness is not None
    return best, witness


def _value_assignments(q: int, w: int) -> IntMatrix:
    # First nonzero symbol fixed to 1: scalar multiples of a codeword are codewords.
    if w == 0:
        return np.zeros((1, 0), dtype=np.int64)
    rest = messages(q - 1, w - 1, 0, (q - 1) ** (w - 1)) + 1
    return np.concatenate([np.ones((rest.shape[0], 1), dtype=np.int64), rest], axis=1)


def _min_by_supports(code: LinearCode, support_budget: int) -> tuple[int, IntMatrix]:
    q, bs, h = code.q, code.bs, code.parity_check
    spent = 0
    values_cache: dict[int, IntMatrix] = {}
    for t in range(1, bs.max_weight + 1):
        for tw in lambda_set(t, bs):
            size = sum(tw)
            if size == 0:
                continue
            n_supports = 1
            for nl, wl in zip(bs.block_lengths, tw):
                n_supports *= math.comb(nl, wl)
            if spent + n_supports * (q - 1) ** (size - 1) > support_budget:
                raise BudgetExceeded(
                    f"support enumeration would exceed {support_budget} candidate vectors at weight {t}"
                )
            if size not in values_cache:
                values_cache[size] = _value_assignments(q, size)
            values = values_cache[size]
            per_block = [
                itertools.combinations(range(a, a + nl), wl)
                for a, nl, wl in zip(bs.offsets, bs.block_lengths, tw)
            ]
            for parts in itertools.product(*(list(p) for p in per_block)):
                support = [i for part in parts for i in part]
                spent += values.shape[0]
                syn = (values @ h[:, support].T) % q
                hits = np.flatnonzero(~syn.any(axis=1))
                if hits.size:
                    v = np.zeros(bs.n, dtype=np.int64)
                    v[support] = values[hits[0]]
                    return t, v
    raise ZeroCode("no nonzero codeword found")


# -- weight enumerators and correction capability ---------------------------


def t_weight_enumerator(code: LinearCode, budget: int = CODEBOOK_BUDGET) -> dict[TWeight, int]:
    counts: Counter[TWeight] = Counter()
    for words in codeword_chunks(code, budget):
        tw = t_weights(words, code.bs)
        keys, cnt = np.unique(tw, axis=0, return_counts=True)
        for key, c in zip(keys, cnt):
            counts[tuple(int(x) for x in key)] += int(c)
    return dict(sorted(counts.items()))


def best_split(tw: TWeight, bs: BlockStructure) -> int:
    """``min_r max(wt(r), wt(c - r))`` for any ``c`` with T-weight ``tw``.

    Only splits of the support with ``r_i`` in ``{0, c_i}`` need to be
    considered; the answer is the most balanced subset sum of the multiset
    holding ``lam_l`` with multiplicity ``tw_l``.
    """
    total = sum(w * lam for w, lam in zip(tw, bs.scaling_factors))
    reach = 1  # bit s set <=> subset sum s attainable
    for w, lam in zip(tw, bs.scaling_factors):
        for _ in range(w):
            reach |= reach << lam
    best = total
    s = 0
    while reach:
        if reach & 1:
            best = min(best, max(s, total - s))
        reach >>= 1
        s += 1
    return best


def tau(code: LinearCode, budget: int = CODEBOOK_BUDGET) -> int:
    """Guaranteed error-correction radius: every error of weight <= tau is correctable."""
    enum = t_weight_enumerator(code, budget)
    return min(best_split(tw, code.bs) for tw in enum if any(tw)) - 1


def tau_oracle(
    code: LinearCode, budget: int = CODEBOOK_BUDGET, ambient_budget: int = AMBIENT_BUDGET
) -> int:
    """Literal double minimisation over nonzero codewords and all of F_q^n."""
    q, bs = code.q, code.bs
    ambient = np.concatenate(list(ambient_chunks(q, code.n, ambient_budget)), axis=0)
    w_r = wh_weights(ambient, bs)
    best = None
    for c in enumerate_codewords(code, budget):
        if not c.any():
            continue
        w_diff = wh_weights((c[None, :] - ambient) % q, bs)
        val = int(np.maximum(w_r, w_diff).min())
        best = val if best is None else min(best, val)
    assert best is not None
    return best - 1


# -- random codes ------------------------------------------------------------


def random_generator(field: Field, n: int, k: int, rng: np.random.Generator) -> tuple[IntMatrix, int]:
    """Uniform ``k x n`` matrix of rank ``k``; also returns the number of rejected draws."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    retries = 0
    while True:
        g = rng.integers(0, field.q, size=(k, n), dtype=np.int64)
        if field.rank(g) == k:
            return g, retries
        retries += 1


def random_code(field: Field, bs: BlockStructure, k: int, seed: int | np.random.Generator) -> LinearCode:
    """Code spanned by a uniformly random full-rank generator (PCG64 seeded by ``seed``)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g, retries = random_generator(field, bs.n, k, rng)
    if retries:
        log.debug("random_code: %d rank-deficient draws rejected", retries)
    return code_from_generator(field, bs, g)


# -- file format -----------------------------------------------------------


def code_to_dict(code: LinearCode) -> dict[str, Any]:
    return {
        "q": code.q,
        "blocks": [{"n": n, "lambda": lam} for n, lam in code.bs.blocks],
        "generator": code.generator.tolist(),
    }


def parse_matrix(raw: Any, q: int, what: str) -> list[list[int]]:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise MalformedCodeFile(f"{what} must be a list of rows")
    for row in raw:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < q:
                raise MalformedCodeFile(f"{what} entry {x!r} is not an integer in [0, {q})")
    if len({len(r) for r in raw}) > 1:
        raise MalformedCodeFile(f"{what} rows have differing lengths")
    return raw


def parse_code_header(data: Any) -> tuple[Field, BlockStructure]:
    if not isinstance(data, dict):
        raise MalformedCodeFile("code file must hold a JSON object")
    try:
        q = int(data["q"])
        lengths = tuple(int(b["n"]) for b in data["blocks"])
        scales = tuple(int(b["lambda"]) for b in data["blocks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCodeFile(f"bad code header: {exc!r}") from exc
    field = Field(q)
    bs = BlockStructure(lengths, scales)
    return field, bs


def code_from_dict(data: Any) -> LinearCode:
    field, bs = parse_code_header(data)
    has_g, has_h = "generator" in data, "parity_check" in data
    if has_g == has_h:
        raise MalformedCodeFile("exactly one of 'generator' and 'parity_check' must be present")
    if has_g:
        g = parse_matrix(data["generator"], field.q, "generator")
        return code_from_generator(field, bs, field.matrix(g, cols=bs.n))
    h = parse_matrix(data["parity_check"], field.q, "parity_check")
    return code_from_parity_check(field, bs, field.matrix(h, cols=bs.n))


def load_code(path: str | Path) -> LinearCode:
    return code_from_dict(read_json(path))


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedCodeFile(f"{path}: {exc}") from exc
