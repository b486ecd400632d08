"""Small dense linear-algebra helpers."""
from __future__ import annotations

import numpy as np


def rank(vectors, tol: float = 1e-9) -> int:
    """Rank of a set of vectors by Gaussian elimination with partial pivoting.

    ``vectors`` is any array whose first axis indexes the vectors; trailing
    axes are flattened.  A pivot below ``tol`` counts as zero.
    """
    a = np.array(vectors, dtype=float).reshape(len(vectors), -1).T.copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) < tol:
            continue
        a[[r, p]] = a[[p, r]]
        a[r + 1:] -= np.outer(a[r + 1:, c] / a[r, c], a[r])
        r += 1
    return r


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x
