"""Small dense GF(2) linear-algebra helpers on numpy uint8 arrays."""

from __future__ import annotations

import numpy as np


def as_gf2(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def rank(a) -> int:
    m = as_gf2(a).copy()
    if m.size == 0:
        return 0
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i, c]), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def inverse(a) -> np.ndarray:
    """Inverse of a square GF(2) matrix; raises ValueError when singular."""
    m = as_gf2(a)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([m, np.eye(n, dtype=np.uint8)], axis=1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i, c]), None)
        if pivot is None:
            raise ValueError("matrix is singular over GF(2)")
        aug[[c, pivot]] = aug[[pivot, c]]
        for i in range(n):
            if i != c and aug[i, c]:
                aug[i] ^= aug[c]
    return aug[:, n:].copy()


def in_row_space(rows, v) -> bool:
    rows = as_gf2(rows)
    v = as_gf2(v).reshape(1, -1)
    if rows.size == 0:
        return not v.any()
    return rank(rows) == rank(np.concatenate([rows, v], axis=0))


def matvec(m, v) -> np.ndarray:
    return (as_gf2(m).astype(np.int64) @ as_gf2(v).astype(np.int64)) % 2
