"""Tabulated bound series for n = (7, 7), lambda = (1, 2), d = 1..21.

Reference values for the bound tables; ``None`` marks distances where the
Plotkin-like bound does not apply.
"""

D_RANGE = range(1, 22)

REFERENCE = {
    2: {
        "hamming": [14, 14, 11, 11, 8, 8, 7, 7, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 1, 1, 1],
        "singleton": [14, 13, 12, 11, 10, 9, 8, 7, 7, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1],
        "plotkin": [None] * 10 + [4, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1],
        "lp": [14, 13, 11, 10, 8, 8, 7, 6, 5, 4, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1],
        "gv": [14, 11, 9, 8, 6, 5, 4, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        "construction": {5: 8},
    },
    7: {
        "hamming": [14, 14, 12, 12, 10, 10, 9, 9, 8, 8, 7, 7, 6, 6, 5, 5, 4, 4, 4, 4, 3],
        "singleton": [14, 13, 12, 11, 10, 9, 8, 7, 7, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1],
        "plotkin": [None] * 18 + [1, 1, 1],
        "lp": [14, 13, 12, 11, 10, 9, 8, 7, 7, 6, 6, 5, 5, 4, 3, 3, 2, 2, 1, 1, 1],
        "gv": [14, 13, 11, 10, 9, 8, 7, 6, 5, 5, 4, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1],
        "construction": {5: 10},
    },
}
