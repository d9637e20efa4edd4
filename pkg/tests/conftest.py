import numpy as np
import pytest

from whmetric.code import code_from_generator
from whmetric.field import Field
from whmetric.metric import BlockStructure

F2 = Field(2)
F7 = Field(7)
REF_BS = BlockStructure((7, 7), (1, 2))


def complement_code():
    g = np.hstack([np.eye(4, dtype=np.int64), 1 - np.eye(4, dtype=np.int64)])
    return code_from_generator(F2, BlockStructure((4, 4), (1, 2)), g)


def tail_identity_code():
    g = np.hstack([np.zeros((4, 4), dtype=np.int64), np.eye(4, dtype=np.int64)])
    return code_from_generator(F2, BlockStructure((4, 4), (2, 7)), g)


def hamming74():
    g = [
        [1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ]
    return code_from_generator(F2, BlockStructure((7,), (1,)), g)


def all_vectors(q, n):
    """Every vector of F_q^n, row by row (independent of library enumeration)."""
    return np.array(np.meshgrid(*([np.arange(q)] * n), indexing="ij")).reshape(n, -1).T


@pytest.fixture
def comp():
    return complement_code()


@pytest.fixture
def tail():
    return tail_identity_code()
