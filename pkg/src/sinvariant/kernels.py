"""Dense linear algebra mod p.

The row-reduction kernel is compiled with numba when available.  Set
``SINVARIANT_NO_JIT=1`` to force the pure numpy path.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["rank_mod_p", "in_column_space", "USING_JIT", "rank_mod_p_numpy", "rank_mod_p_jit"]

MERSENNE = 2**31 - 1


def rank_mod_p_numpy(M: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p, vectorised per pivot."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        below = A[r + 1 :, c]
        idx = np.nonzero(below)[0] + r + 1
        if idx.size:
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], A[r, c:])) % p
        r += 1
    return r


def _rank_kernel(A, p):
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        # modular inverse by exponentiation
        base = A[r, c]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, cols):
            A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, rows):
            f = A[i, c]
            if f != 0:
                for j in range(c, cols):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


_jit_kernel = None
if os.environ.get("SINVARIANT_NO_JIT", "") not in ("1", "true", "yes"):
    try:
        from numba import njit

        _jit_kernel = njit(cache=True)(_rank_kernel)
    except ImportError:  # pragma: no cover
        _jit_kernel = None

USING_JIT = _jit_kernel is not None


def rank_mod_p_jit(M: np.ndarray, p: int) -> int:
    if _jit_kernel is None:
        raise RuntimeError("numba kernel disabled")
    A = np.ascontiguousarray(np.array(M, dtype=np.int64) % p)
    return int(_jit_kernel(A, np.int64(p)))


def rank_mod_p(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if USING_JIT:
        return rank_mod_p_jit(M, p)
    return rank_mod_p_numpy(M, p)


def in_column_space(A: np.ndarray, b: np.ndarray, p: int) -> bool:
    """Whether b lies in the span of the columns of A over F_p."""
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    if not b.any():
        return True
    if A.size == 0:
        return False
    return rank_mod_p(A, p) == rank_mod_p(np.hstack([A, b]), p)
