"""Dense linear algebra over a prime field F_p with numpy int64 arrays."""
from __future__ import annotations

import numpy as np


def as_fp(m, p: int) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) % p


def rref(m, p: int):
    """Reduced row echelon form and pivot columns."""
    a = as_fp(m, p).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m, p: int) -> np.ndarray:
    """Columns spanning {v : m v = 0}."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(m, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(piv):
            out[c, k] = (-r[i, f]) % p
    return out


def column_space(m, p: int) -> np.ndarray:
    m = as_fp(m, p)
    if m.size == 0:
        return m
    _, piv = rref(m, p)
    return m[:, piv]


def inverse(m, p: int) -> np.ndarray:
    m = as_fp(m, p)
    n = m.shape[0]
    r, piv = rref(np.hstack([m, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:]


def is_invertible(m, p: int) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def solve(a, b, p: int) -> np.ndarray:
    """X with a X = b; a must have full column rank and b in its span."""
    a, b = as_fp(a, p), as_fp(b, p)
    n = a.shape[1]
    r, piv = rref(np.hstack([a, b]), p)
    if piv[:n] != list(range(n)) or any(c >= n for c in piv):
        raise ValueError("system has no unique solution")
    return r[:n, n:]


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def matpow(a, e: int, mod: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = np.asarray(a, dtype=np.int64) % mod
    while e:
        if e & 1:
            out = (out @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return out
