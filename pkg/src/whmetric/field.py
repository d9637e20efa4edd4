"""Prime-field arithmetic and dense matrix routines over F_q.

Elements are plain Python/numpy integers in ``[0, q)``.  Matrices are 2-D
``numpy.int64`` arrays; with ``q < 2**16`` every product of two entries and
every row reduction step fits comfortably in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
import numpy.typing as npt

from whmetric.errors import CompositeModulus, DivisionByZero

MAX_MODULUS = 1 << 16

Op = Literal["add", "sub", "mul", "div", "neg", "inv"]
IntMatrix = npt.NDArray[np.int64]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    i = 3
    while i * i <= q:
        if q % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field F_q."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, (int, np.integer)) or self.q < 2:
            raise CompositeModulus(f"field size must be an integer >= 2, got {self.q!r}")
        if self.q >= MAX_MODULUS:
            raise CompositeModulus(f"field size {self.q} exceeds the supported bound 2**16")
        if not is_prime(int(self.q)):
            raise CompositeModulus(f"{self.q} is not prime; only prime fields are supported")
        object.__setattr__(self, "q", int(self.q))

    # -- scalar arithmetic -------------------------------------------------

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return pow(a, -1, self.q)

    def arith(self, a: int, b: int | None, op: Op) -> int:
        """Apply ``op`` to ``a`` (and ``b`` for binary operations) modulo q."""
        q = self.q
        if op == "add":
            return (a + b) % q
        if op == "sub":
            return (a - b) % q
        if op == "mul":
            return (a * b) % q
        if op == "div":
            return (a * self.inv(b)) % q
        if op == "neg":
            return (-a) % q
        if op == "inv":
            return self.inv(a)
        raise ValueError(f"unknown operation {op!r}")

    # -- matrices ----------------------------------------------------------

    def matrix(self, rows: Sequence[Sequence[int]] | npt.ArrayLike, cols: int | None = None) -> IntMatrix:
        """Coerce ``rows`` to a reduced int64 matrix.

        ``cols`` fixes the width when ``rows`` is empty.
        """
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            return np.zeros((0, cols or (arr.shape[1] if arr.ndim == 2 else 0)), dtype=np.int64)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
        return np.mod(arr, self.q)

    def vector(self, values: npt.ArrayLike) -> npt.NDArray[np.int64]:
        return np.mod(np.asarray(values, dtype=np.int64).reshape(-1), self.q)

    def matmul(self, a: npt.ArrayLike, b: npt.ArrayLike) -> IntMatrix:
        return np.mod(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), self.q)

    def rref(self, m: npt.ArrayLike) -> tuple[IntMatrix, int, list[int]]:
        """Reduced row-echelon form, rank and pivot columns.

        Pivot rows are chosen as the first row (from the current one down)
        with a nonzero entry in the pivot column, so output is deterministic.
        """
        a = np.array(m, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
        a %= self.q
        q = self.q
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
            a[r] = (a[r] * pow(int(a[r, c]), -1, q)) % q
            others = np.flatnonzero(a[:, c])
            others = others[others != r]
            if others.size:
                a[others] = (a[others] - np.outer(a[others, c], a[r])) % q
            pivots.append(c)
            r += 1
        return a, r, pivots

    def rank(self, m: npt.ArrayLike) -> int:
        return self.rref(m)[1]

    def row_basis(self, m: npt.ArrayLike) -> IntMatrix:
        """Nonzero rows of the RREF: a canonical basis of the row space."""
        reduced, rank, _ = self.rref(m)
        return reduced[:rank]

    def kernel_basis(self, m: npt.ArrayLike) -> IntMatrix:
        """Basis of the right kernel ``{x : m @ x = 0}``, one vector per row."""
        a = np.asarray(m, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
        cols = a.shape[1]
        reduced, _, pivots = self.rref(a)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, p in enumerate(pivots):
                basis[i, p] = (-reduced[row, f]) % self.q
        return basis
