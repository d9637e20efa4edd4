import itertools

import numpy as np
import pytest

import oracles
from conftest import F2, F7
from whmetric.balls import ball_size
from whmetric.bounds import mds_wh_distance, singleton_bound
from whmetric.code import codebook, min_weight_codeword, min_wh_distance, tau
from whmetric.constructions import (
    binary_bch_extension,
    binary_hamming_parity,
    construction1,
    construction1_decode,
    constructed_from_dict,
    gf2m_mul,
    reed_solomon,
    PRIMITIVE_POLYS,
)
from whmetric.errors import DecodeFailure, InvalidParameter, LengthExceedsField, LengthMismatch
from whmetric.field import Field
from whmetric.metric import BlockStructure, wh_weight


def low_weight_patterns(q, n1, n2):
    """All errors of weight <= 2 for scalings (1, 2): <= 2 symbols in block 1 or 1 in block 2."""
    out = [np.zeros(n1 + n2, dtype=np.int64)]
    for w in (1, 2):
        for pos in itertools.combinations(range(n1), w):
            for vals in itertools.product(range(1, q), repeat=w):
                e = np.zeros(n1 + n2, dtype=np.int64)
                e[list(pos)] = vals
                out.append(e)
    for pos in range(n1, n1 + n2):
        for v in range(1, q):
            e = np.zeros(n1 + n2, dtype=np.int64)
            e[pos] = v
            out.append(e)
    return out


def test_reed_solomon():
    rs = reed_solomon(7, 7, 5)
    assert rs.k == 5
    assert min_wh_distance(rs, "codebook") == 3
    assert min_wh_distance(rs, "support_enum") == 3
    assert reed_solomon(7, 7, 7).k == 7
    assert min_wh_distance(reed_solomon(7, 7, 7)) == 1
    with pytest.raises(LengthExceedsField):
        reed_solomon(2, 3, 2)
    with pytest.raises(InvalidParameter):
        reed_solomon(7, 7, 0)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_reed_solomon_attains_weighted_singleton(k):
    bs = BlockStructure((5, 9), (3, 1))
    rs = reed_solomon(17, 14, k, bs)
    d = min_wh_distance(rs, "codebook")
    assert d == mds_wh_distance(17, bs, k)
    assert singleton_bound(17, bs, d) == k


def test_gf2m_tables():
    for m, poly in PRIMITIVE_POLYS.items():
        # x generates the multiplicative group
        x, seen = 1, set()
        for _ in range(2**m - 1):
            seen.add(x)
            x = gf2m_mul(x, 2, m)
        assert len(seen) == 2**m - 1 and x == 1


def test_hamming_and_bch_stacks():
    for m in (3, 4):
        h = binary_hamming_parity(m)
        assert h.shape == (m, 2**m - 1)
        assert sorted(int("".join(map(str, col)), 2) for col in h.T) == list(range(1, 2**m))
    from whmetric.code import code_from_parity_check

    c3 = code_from_parity_check(F2, BlockStructure((7,), (1,)), np.vstack([binary_hamming_parity(3), binary_bch_extension(3)]))
    assert (c3.k, min_wh_distance(c3)) == (1, 7)
    c4 = code_from_parity_check(F2, BlockStructure((15,), (1,)), np.vstack([binary_hamming_parity(4), binary_bch_extension(4)]))
    assert (c4.k, min_wh_distance(c4)) == (7, 5)
    with pytest.raises(InvalidParameter):
        binary_hamming_parity(1)
    with pytest.raises(InvalidParameter):
        binary_bch_extension(2)


@pytest.mark.parametrize("m", [3, 4])
def test_binary_construction_parameters(m):
    n = 2**m - 1
    cc = construction1(F2, n, n, "binary")
    code = cc.code
    assert code.k == 2 * (2**m - m - 1)
    assert code.redundancy == 2 * m
    ball = ball_size(2, code.bs, 2)
    assert ball == 2 ** (m - 1) * (2**m + 1)
    assert 2 ** (code.redundancy - 1) < ball <= 2**code.redundancy
    assert min_wh_distance(code, "support_enum") == 5


def test_binary_construction_m3_full():
    cc = construction1(F2, 7, 7, "binary")
    assert min_wh_distance(cc.code, "codebook") == 5
    assert tau(cc.code) == 2


def test_binary_decoder_exhaustive_m3():
    cc = construction1(F2, 7, 7, "binary")
    patterns = low_weight_patterns(2, 7, 7)
    assert len(patterns) == 36
    for c in codebook(cc.code):
        for e in patterns:
            assert np.array_equal(construction1_decode(cc, (c + e) % 2), c)


def test_binary_decoder_random_m4():
    cc = construction1(F2, 15, 15, "binary")
    rng = np.random.default_rng(4)
    patterns = low_weight_patterns(2, 15, 15)
    msgs = rng.integers(0, 2, size=(5000, cc.code.k))
    words = cc.code.encode(msgs)
    picks = rng.integers(0, len(patterns), size=len(words))
    for c, p in zip(words, picks):
        assert np.array_equal(construction1_decode(cc, (c + patterns[p]) % 2), c)


def test_shortened_binary_variants():
    for n1, n2 in [(5, 3), (6, 7), (7, 4), (10, 9)]:
        cc = construction1(F2, n1, n2, "binary")
        assert cc.code.n == n1 + n2
        assert min_wh_distance(cc.code) >= 5
        for c in codebook(cc.code)[:8]:
            for e in low_weight_patterns(2, n1, n2):
                assert np.array_equal(construction1_decode(cc, (c + e) % 2), c)


def test_mds_construction_f7():
    cc = construction1(F7, 7, 7, "mds")
    code = cc.code
    assert code.k == 10 and code.redundancy == 4
    assert singleton_bound(7, code.bs, 5) == 10
    d, w = min_weight_codeword(code, "support_enum")
    assert d == 5 and code.contains(w) and wh_weight(w, code.bs) == 5


def test_mds_decoder_random():
    cc = construction1(F7, 7, 7, "mds")
    rng = np.random.default_rng(8)
    patterns = low_weight_patterns(7, 7, 7)
    words = cc.code.encode(rng.integers(0, 7, size=(3000, cc.code.k)))
    for c in words:
        e = patterns[rng.integers(len(patterns))]
        assert np.array_equal(construction1_decode(cc, (c + e) % 7), c)


def test_mds_smaller_field():
    cc = construction1(Field(11), 6, 4, "mds")
    assert cc.code.k == 6
    assert min_wh_distance(cc.code) == 5


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        construction1(F7, 7, 7, "binary")
    with pytest.raises(InvalidParameter):
        construction1(F2, 4, 7, "binary")
    with pytest.raises(InvalidParameter):
        construction1(F2, 7, 2, "binary")
    with pytest.raises(InvalidParameter):
        construction1(F7, 8, 7, "mds")
    with pytest.raises(InvalidParameter):
        construction1(F7, 4, 4, "mds")
    with pytest.raises(InvalidParameter):
        construction1(F7, 7, 7, "goppa")


def test_decode_failure_and_length():
    cc = construction1(F2, 7, 7, "binary")
    with pytest.raises(LengthMismatch):
        construction1_decode(cc, [0] * 13)
    # three errors in block 1 with a syndrome no low-weight pattern explains
    failures = 0
    for pos in itertools.combinations(range(7), 3):
        r = np.zeros(14, dtype=np.int64)
        r[list(pos)] = 1
        try:
            construction1_decode(cc, r)
        except DecodeFailure:
            failures += 1
    assert failures > 0


def test_dict_round_trip():
    cc = construction1(F7, 7, 7, "mds")
    back = constructed_from_dict(cc.to_dict())
    assert np.array_equal(back.code.generator, cc.code.generator)
    assert back.family == "mds"


def test_mds_decoder_exhaustive_patterns():
    # the decoder depends on r only through its syndrome, so covering every
    # pattern on the zero word plus a few other codewords covers all words
    cc = construction1(F7, 7, 7, "mds")
    patterns = low_weight_patterns(7, 7, 7)
    assert len(patterns) == 1 + 42 + 21 * 36 + 42
    rng = np.random.default_rng(1)
    words = np.vstack([np.zeros((1, 14), dtype=np.int64), cc.code.encode(rng.integers(0, 7, size=(4, 10)))])
    for c in words:
        for e in patterns:
            assert np.array_equal(construction1_decode(cc, (c + e) % 7), c)


def test_lp_sound_on_constructed_codes():
    from whmetric.bounds import lp_value

    for fld, family in ((F2, "binary"), (F7, "mds")):
        code = construction1(fld, 7, 7, family).code
        assert code.size <= lp_value(fld.q, code.bs, 5)
    bs = BlockStructure((7, 7), (1, 2))
    for k in (3, 4, 5):
        rs = reed_solomon(17, 14, k, bs)
        d = mds_wh_distance(17, bs, k)
        assert rs.size <= lp_value(17, bs, d)
