"""Row reduction over F_p."""

from __future__ import annotations

import numpy as np


def row_reduce(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``mat`` mod ``p`` and its pivot columns."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat, p: int) -> int:
    if np.size(mat) == 0:
        return 0
    return len(row_reduce(mat, p)[1])


def nullspace_mod_p(mat, p: int) -> np.ndarray:
    """Basis of the right null space of ``mat`` mod ``p``, one vector per row."""
    a, pivots = row_reduce(mat, p)
    n = a.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-a[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)
