"""Explicit codes and the two-level parity-check construction for d = 5, lambda = (1, 2).

The construction stacks three parity-check blocks::

    H = [[H1, H2],
         [H3,  0]]

where ``H2`` and ``H3`` check distance-3 codes on the two blocks and
``(H1; H3)`` checks a distance-5 code on the first block.  Any error of
weighted-Hamming weight at most 2 is either up to two symbol errors in
block 1 (and ``H3`` sees them) or a single error in block 2 (and ``H3``
sees nothing), which is what :func:`construction1_decode` exploits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Literal

import numpy as np
import numpy.typing as npt

from whmetric.code import LinearCode, code_from_generator, code_from_parity_check, code_to_dict, parse_code_header, parse_matrix
from whmetric.errors import DecodeFailure, InvalidParameter, LengthExceedsField, LengthMismatch, MalformedCodeFile
from whmetric.field import Field, IntMatrix
from whmetric.metric import BlockStructure

Family = Literal["binary", "mds"]

# Primitive polynomials for F_{2^m}, bit i = coefficient of x^i.
PRIMITIVE_POLYS = {
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10001001,  # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,  # x^9 + x^4 + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
}


def gf2m_mul(a: int, b: int, m: int) -> int:
    poly = PRIMITIVE_POLYS[m]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return out


def _bits_msb_first(x: int, m: int) -> list[int]:
    return [(x >> (m - 1 - i)) & 1 for i in range(m)]


def reed_solomon(q: int, n: int, k: int, bs: BlockStructure | None = None) -> LinearCode:
    """``[n, k, n-k+1]`` code with generator rows ``(alpha_j ** i)`` at points ``alpha_j = 0..n-1``.

    ``bs`` defaults to one block with scaling 1.
    """
    fld = Field(q)
    if n > q:
        raise LengthExceedsField(f"length {n} exceeds the {q} available evaluation points")
    if not 1 <= k <= n:
        raise InvalidParameter(f"need 1 <= k <= n, got k={k}, n={n}")
    bs = bs or BlockStructure((n,), (1,))
    if bs.n != n:
        raise LengthMismatch(f"block structure has length {bs.n}, code has {n}")
    points = np.arange(n, dtype=np.int64)
    g = np.array([[pow(int(a), i, q) for a in points] for i in range(k)], dtype=np.int64)
    return code_from_generator(fld, bs, g)


def binary_hamming_parity(m: int) -> IntMatrix:
    """``m x (2^m - 1)`` matrix whose columns are 1, 2, ..., 2^m - 1 in binary (top row = MSB)."""
    if m < 2:
        raise InvalidParameter(f"Hamming codes need m >= 2, got {m}")
    cols = [_bits_msb_first(x, m) for x in range(1, 2**m)]
    return np.array(cols, dtype=np.int64).T


def binary_bch_extension(m: int) -> IntMatrix:
    """Rows completing the Hamming parity check to a double-error-correcting BCH check.

    Column ``j`` is ``alpha_j ** 3`` where ``alpha_j`` is column ``j`` of
    :func:`binary_hamming_parity` read as an element of F_{2^m}.
    """
    if m < 3:
        raise InvalidParameter(f"double-error-correcting BCH extension needs m >= 3, got {m}")
    if m not in PRIMITIVE_POLYS:
        raise InvalidParameter(f"no primitive polynomial tabulated for m={m}")
    cols = []
    for x in range(1, 2**m):
        cube = gf2m_mul(gf2m_mul(x, x, m), x, m)
        cols.append(_bits_msb_first(cube, m))
    return np.array(cols, dtype=np.int64).T


@dataclass(frozen=True, eq=False)
class ConstructedCode:
    code: LinearCode
    h1: IntMatrix
    h2: IntMatrix
    h3: IntMatrix
    family: Family
    syndrome_table_inner: dict[tuple[int, ...], IntMatrix] = dc_field(repr=False)
    syndrome_table_outer: dict[tuple[int, ...], IntMatrix] = dc_field(repr=False)

    @property
    def n1(self) -> int:
        return self.h1.shape[1]

    @property
    def n2(self) -> int:
        return self.h2.shape[1]

    def to_dict(self) -> dict[str, Any]:
        out = code_to_dict(self.code)
        out["construction"] = {
            "family": self.family,
            "h1": self.h1.tolist(),
            "h2": self.h2.tolist(),
            "h3": self.h3.tolist(),
        }
        return out


def _error_patterns(q: int, length: int, max_weight: int) -> list[IntMatrix]:
    out = []
    for w in range(1, max_weight + 1):
        for support in itertools.combinations(range(length), w):
            for values in itertools.product(range(1, q), repeat=w):
                e = np.zeros(length, dtype=np.int64)
                e[list(support)] = values
                out.append(e)
    return out


def _build_table(fld: Field, check: IntMatrix, patterns: list[IntMatrix]) -> dict[tuple[int, ...], IntMatrix]:
    table: dict[tuple[int, ...], IntMatrix] = {}
    for e in patterns:
        key = tuple(int(x) for x in fld.matmul(check, e))
        if key in table:
            raise InvalidParameter(
                f"syndrome collision: {table[key].tolist()} and {e.tolist()} are indistinguishable"
            )
        table[key] = e
    return table


def assemble(fld: Field, h1: npt.ArrayLike, h2: npt.ArrayLike, h3: npt.ArrayLike, family: Family) -> ConstructedCode:
    """Assemble ``H = [[H1, H2], [H3, 0]]`` and its syndrome tables from given blocks."""
    h1, h2, h3 = (fld.matrix(x) for x in (h1, h2, h3))
    n1, n2 = h1.shape[1], h2.shape[1]
    if h1.shape[0] != h2.shape[0]:
        raise InvalidParameter(f"H1 has {h1.shape[0]} rows but H2 has {h2.shape[0]}")
    if h3.shape[1] != n1:
        raise InvalidParameter(f"H3 has {h3.shape[1]} columns but H1 has {n1}")
    top = np.concatenate([h1, h2], axis=1)
    bottom = np.concatenate([h3, np.zeros((h3.shape[0], n2), dtype=np.int64)], axis=1)
    bs = BlockStructure((n1, n2), (1, 2))
    code = code_from_parity_check(fld, bs, np.concatenate([top, bottom], axis=0))
    inner = _build_table(fld, np.concatenate([h1, h3], axis=0), _error_patterns(fld.q, n1, 2))
    outer = _build_table(fld, h2, [np.zeros(n2, dtype=np.int64)] + _error_patterns(fld.q, n2, 1))
    return ConstructedCode(code, h1, h2, h3, family, inner, outer)


def construction1(fld: Field, n1: int, n2: int, family: Family) -> ConstructedCode:
    """Distance-5 code for block scalings ``(1, 2)``.

    ``binary``: Hamming checks for ``H2``/``H3`` and BCH cube rows for
    ``H1`` (shortened to the first ``n1``/``n2`` columns when the lengths
    are below ``2^m - 1``).  ``mds``: Vandermonde rows ``(1; a)`` for
    ``H2``/``H3`` and ``(a^2; a^3)`` for ``H1`` at distinct points.
    """
    if family == "binary":
        if fld.q != 2:
            raise InvalidParameter(f"binary family needs q = 2, got q = {fld.q}")
        m = max(n1, n2).bit_length()
        if m < 3:
            raise InvalidParameter(f"binary family needs 2^m - 1 >= max(n1, n2) with m >= 3; got n1={n1}, n2={n2}")
        if n1 < 5 or n2 < 3:
            raise InvalidParameter(f"binary family needs n1 >= 5 and n2 >= 3, got n1={n1}, n2={n2}")
        ham = binary_hamming_parity(m)
        cube = binary_bch_extension(m)
        return assemble(fld, cube[:, :n1], ham[:, :n2], ham[:, :n1], family)
    if family == "mds":
        q = fld.q
        if q < max(n1, n2) or n1 < 5:
            raise InvalidParameter(
                f"MDS optimality requires q >= max(n1, n2) and n1 >= 5; got q={q}, n1={n1}, n2={n2}"
            )
        if n2 < 3:
            raise InvalidParameter(f"mds family needs n2 >= 3, got n2={n2}")
        a = np.arange(n1, dtype=np.int64)
        b = np.arange(n2, dtype=np.int64)
        h3 = np.stack([np.ones(n1, dtype=np.int64), a])
        h1 = np.stack([a**2 % q, a**3 % q])
        h2 = np.stack([np.ones(n2, dtype=np.int64), b])
        return assemble(fld, h1, h2, h3, family)
    raise InvalidParameter(f"unknown family {family!r}")


def construction1_decode(cc: ConstructedCode, r: npt.ArrayLike) -> IntMatrix:
    """Correct any error of weighted-Hamming weight <= 2.

    Raises :class:`DecodeFailure` when the syndrome matches no tabulated
    pattern; words with larger errors may also decode to a wrong codeword.
    """
    fld = cc.code.field
    r = np.asarray(r, dtype=np.int64).reshape(-1)
    if r.size != cc.n1 + cc.n2:
        raise LengthMismatch(f"received word has length {r.size}, code has {cc.n1 + cc.n2}")
    r = r % fld.q
    r1, r2 = r[: cc.n1], r[cc.n1 :]
    s3 = fld.matmul(cc.h3, r1)
    s_top = (fld.matmul(cc.h1, r1) + fld.matmul(cc.h2, r2)) % fld.q
    e = np.zeros_like(r)
    if not s3.any():
        key = tuple(int(x) for x in s_top)
        if key not in cc.syndrome_table_outer:
            raise DecodeFailure(f"block-2 syndrome {key} matches no single error")
        e[cc.n1 :] = cc.syndrome_table_outer[key]
    else:
        key = tuple(int(x) for x in np.concatenate([s_top, s3]))
        if key not in cc.syndrome_table_inner:
            raise DecodeFailure(f"block-1 syndrome {key} matches no error of weight <= 2")
        e[: cc.n1] = cc.syndrome_table_inner[key]
    return (r - e) % fld.q


def constructed_from_dict(data: Any) -> ConstructedCode:
    fld, _ = parse_code_header(data)
    spec = data.get("construction")
    if not isinstance(spec, dict):
        raise MalformedCodeFile("code file has no 'construction' object")
    try:
        family = spec["family"]
        h1, h2, h3 = (parse_matrix(spec[key], fld.q, key) for key in ("h1", "h2", "h3"))
    except KeyError as exc:
        raise MalformedCodeFile(f"construction object lacks {exc}") from exc
    return assemble(fld, h1, h2, h3, family)
