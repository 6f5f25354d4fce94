"""Dense Gauss-Jordan elimination over F_p.

Two interchangeable implementations: a numba ``@njit`` kernel and a pure
numpy one.  Set ``TJURINA_DISABLE_NUMBA=1`` to force the numpy path (numba
is also skipped automatically when it cannot be imported).

Both take an ``int64`` array with entries already reduced to ``[0, p)``,
``p < 2**31``, and reduce it in place.  With ``reduced=True`` the result is
the reduced row echelon form with unit pivots; otherwise only the entries
below each pivot are cleared, which is enough for the rank.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 2**31

_env = os.environ.get("TJURINA_DISABLE_NUMBA", "").strip().lower()
NUMBA_REQUESTED = _env not in ("1", "true", "yes", "on")

try:
    if not NUMBA_REQUESTED:
        raise ImportError("disabled by TJURINA_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def rref_modp_numpy(A: np.ndarray, p: int, reduced: bool = True) -> tuple[int, np.ndarray]:
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], c:] = A[[piv, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c] if reduced else A[r + 1:, c]
        hit = np.flatnonzero(col)
        if not reduced:
            hit = hit + r + 1
        hit = hit[hit != r]
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(A[hit, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_modp_nb(A, p, reduced):
        m, n = A.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    t = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = t
            inv = _inv_mod(A[r, c], p)
            for j in range(c, n):
                A[r, j] = (A[r, j] * inv) % p
            start = 0 if reduced else r + 1
            for i in range(start, m):
                if i == r:
                    continue
                a = A[i, c]
                if a != 0:
                    for j in range(c, n):
                        v = A[r, j]
                        if v != 0:
                            A[i, j] = (A[i, j] - a * v) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    def rref_modp_numba(A: np.ndarray, p: int, reduced: bool = True) -> tuple[int, np.ndarray]:
        r, piv = _rref_modp_nb(A, np.int64(p), reduced)
        return int(r), piv

    rref_modp = rref_modp_numba
else:
    rref_modp_numba = None
    rref_modp = rref_modp_numpy


def backend() -> str:
    return "numba" if rref_modp is not rref_modp_numpy else "numpy"
