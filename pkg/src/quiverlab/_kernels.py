"""Exact linear algebra over a fixed prime field.

Everything in this package that needs ranks, kernels or solutions of linear
systems works over F_P for a fixed word-sized prime P.  The prime is large
enough that the generic constructions used elsewhere (random Frobenius
functionals, generic solutions picked from solution spaces) behave like
characteristic zero at the dimensions that occur here, while every
intermediate product of two reduced entries stays far inside int64.

Matrices are int64 numpy arrays with entries in [0, P).  Two interchangeable
backends implement the row-reduction kernel: a jit-compiled one and a pure
numpy one.  The backend is chosen once at import time from the
QUIVERLAB_BACKEND environment variable ("numba" or "numpy"); the default is
numba when it is importable.  `benchmarks/bench_kernels.py` compares the two.
"""
from __future__ import annotations

import os

import numpy as np

P = 32003  # prime; P*P < 2**63 / 8000, so row ops never overflow int64


def reduce_mod(a) -> np.ndarray:
    """Coerce to an int64 array with entries reduced into [0, P)."""
    return np.asarray(a, dtype=np.int64) % P


def inv_mod(x: int) -> int:
    x = int(x) % P
    if x == 0:
        raise ZeroDivisionError("inverse of 0 mod P")
    return pow(x, -1, P)


def _rref_numpy(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = a.copy()
    m, n = a.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        sel = row + int(nz[0])
        if sel != row:
            a[[row, sel]] = a[[sel, row]]
        a[row] = (a[row] * pow(int(a[row, col]), -1, P)) % P
        factors = a[:, col].copy()
        factors[row] = 0
        a = (a - np.outer(factors, a[row])) % P
        pivots.append(col)
        row += 1
    return a, np.array(pivots, dtype=np.int64)


try:  # pragma: no cover - exercised through the public wrappers
    import numba as nb

    @nb.njit(cache=True)
    def _inv_mod_jit(x: np.int64) -> np.int64:
        # Fermat: x**(P-2) mod P by square-and-multiply.
        result = np.int64(1)
        base = x % P
        exp = P - 2
        while exp > 0:
            if exp & 1:
                result = (result * base) % P
            base = (base * base) % P
            exp >>= 1
        return result

    @nb.njit(cache=True)
    def _rref_jit(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        npiv = 0
        row = 0
        for col in range(n):
            if row == m:
                break
            sel = -1
            for r in range(row, m):
                if a[r, col] != 0:
                    sel = r
                    break
            if sel < 0:
                continue
            if sel != row:
                for c in range(n):
                    t = a[row, c]
                    a[row, c] = a[sel, c]
                    a[sel, c] = t
            inv = _inv_mod_jit(a[row, col])
            for c in range(n):
                a[row, c] = (a[row, c] * inv) % P
            for r in range(m):
                if r != row and a[r, col] != 0:
                    f = a[r, col]
                    for c in range(n):
                        a[r, c] = (a[r, c] - f * a[row, c]) % P
            pivots[npiv] = col
            npiv += 1
            row += 1
        return a, pivots[:npiv]

    def _rref_numba(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return _rref_jit(a.copy())

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False
    _rref_numba = None

_requested = os.environ.get("QUIVERLAB_BACKEND", "").strip().lower()
if _requested == "numpy":
    BACKEND = "numpy"
elif _requested == "numba":
    if not _HAVE_NUMBA:
        raise ImportError("QUIVERLAB_BACKEND=numba but numba is not importable")
    BACKEND = "numba"
else:
    BACKEND = "numba" if _HAVE_NUMBA else "numpy"

_rref_impl = _rref_numba if BACKEND == "numba" else _rref_numpy


def rref(a) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form mod P; returns (matrix, pivot columns)."""
    a = reduce_mod(a)
    if a.size == 0:
        return a, np.empty(0, dtype=np.int64)
    return _rref_impl(a)


def rank(a) -> int:
    a = reduce_mod(a)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def matmul(a, b) -> np.ndarray:
    a = reduce_mod(a)
    b = reduce_mod(b)
    return (a @ b) % P


def nullspace(a) -> np.ndarray:
    """Columns form a basis of the right kernel of `a` mod P."""
    a = reduce_mod(a)
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a)
    pivset = set(int(c) for c in pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[int(pc), k] = (-r[i, fc]) % P
    return basis


def solve(a, b) -> np.ndarray | None:
    """One solution x of a @ x = b mod P (free variables set to 0), or None.

    `b` may be a vector or a matrix; the result matches its shape.
    """
    a = reduce_mod(a)
    b = reduce_mod(b)
    vector = b.ndim == 1
    m, n = a.shape
    bb = b.reshape(m, 1) if vector else b
    if bb.shape[0] != m:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    k = bb.shape[1]
    if m == 0:
        x = np.zeros((n, k), dtype=np.int64)
        return x[:, 0] if vector else x
    if n == 0:
        if np.any(bb % P):
            return None
        x = np.zeros((0, k), dtype=np.int64)
        return x[:, 0] if vector else x
    aug = np.concatenate([a, bb], axis=1)
    r, pivots = rref(aug)
    if any(int(c) >= n for c in pivots):
        return None
    x = np.zeros((n, k), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[int(c)] = r[i, n:]
    return x[:, 0] if vector else x


def row_space_contains(a, v) -> bool:
    """Whether vector v lies in the row space of a (mod P)."""
    a = reduce_mod(a)
    v = reduce_mod(v).reshape(1, -1)
    return rank(np.concatenate([a, v], axis=0)) == rank(a)
