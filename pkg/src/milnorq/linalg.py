"""Dense linear algebra over F_p (desk scale, numpy int64 matrices)."""

from __future__ import annotations

import numpy as np


def rref(matrix, p):
    """Reduced row echelon form mod p; returns (array, pivot column list)."""
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def solve(matrix, rhs, p):
    """One solution of matrix @ x == rhs mod p (free variables 0), or None."""
    a = np.array(matrix, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64) % p
    aug = np.hstack([a, b.reshape(-1, 1)])
    red, pivots = rref(aug, p)
    ncols = a.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = red[r, ncols]
    return x


def kernel_basis(matrix, p):
    """Canonical (reduced-echelon) basis of the null space mod p.

    Returns a list of int64 arrays whose leading entries are 1, ordered by
    leading position.
    """
    a = np.array(matrix, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    ncols = a.shape[1]
    if a.shape[0] == 0:
        red, pivots = a % p, []
    else:
        red, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    vectors = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-int(red[r, f])) % p
        vectors.append(v)
    if not vectors:
        return []
    echelon, _ = rref(np.array(vectors), p)
    return [row for row in echelon if row.any()]
