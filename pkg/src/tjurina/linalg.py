"""Exact rank, pivot columns and nullspace of sparse rational matrices.

Matrices are first split into the connected components of their row/column
incidence graph; rank, pivot columns and the reduced kernel basis are all
computed blockwise and then reassembled, which is exact and leaves the
output unchanged.

Two engines share one contract:

``exact``
    Fraction-free (Bareiss) Gauss-Jordan elimination over the integers on
    each block, after scaling rows to primitive integer form.  python-flint's
    ``fmpz_mat.rref`` does the work when it is importable (and
    ``TJURINA_DISABLE_FLINT`` is unset); otherwise a pure-Python version of
    the same elimination runs.

``fast``
    Dense Gauss-Jordan modulo three ~31-bit primes (``tjurina._kernels``).
    The three results must agree; the candidate kernel basis is then lifted
    by CRT and rational reconstruction and checked as ``M @ v == 0`` with
    exact integer arithmetic.  A verified lift proves ``rank <= r`` while any
    nonzero r-minor mod p proves ``rank >= r``, so the answer is exact.  If
    the primes disagree or the lift fails, the block is redone in exact mode.

Both engines return the canonical data of the reduced row echelon form:
the greedy (first-independent) pivot columns and, for every free column
``c``, the unique kernel vector with ``v[c] = 1`` that vanishes on all other
free columns.
"""

from __future__ import annotations

import logging
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .poly import Scalar, as_scalar

_no_flint = os.environ.get("TJURINA_DISABLE_FLINT", "").strip().lower() in ("1", "true", "yes", "on")
try:
    if _no_flint:
        raise ImportError
    import flint as _flint
except ImportError:
    _flint = None

log = logging.getLogger(__name__)

FIELDS = ("exact", "fast")

# blocks smaller than this go straight to the exact engine even in fast mode
FAST_MIN_ENTRIES = 256
MAX_PRIMES = 24

stats = {"fast_blocks": 0, "fast_fallbacks": 0, "exact_blocks": 0}


@dataclass(frozen=True)
class GradedMatrix:
    """Sparse exact matrix, stored by columns.

    ``columns[j]`` lists the nonzero ``(row, value)`` pairs of column ``j``.
    ``row_basis``/``col_basis`` name the basis elements the coordinates refer
    to (monomials, or ``(index, monomial)`` pairs); they are labels only.
    """

    rows: int
    cols: int
    columns: tuple[tuple[tuple[int, Scalar], ...], ...]
    row_basis: tuple | None = field(default=None, compare=False)
    col_basis: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Iterable[tuple[int, object]]], row_basis=None, col_basis=None):
        cols_out = []
        for col in columns:
            acc: dict[int, Scalar] = {}
            for i, v in col:
                if not 0 <= i < rows:
                    raise IndexError(f"row index {i} out of range")
                acc[i] = acc.get(i, 0) + as_scalar(v)
            cols_out.append(tuple(sorted((i, v) for i, v in acc.items() if v != 0)))
        return cls(rows, len(cols_out), tuple(cols_out), row_basis, col_basis)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> GradedMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls.from_columns(rows, ([(i, data[i][j]) for i in range(rows)] for j in range(cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def todense(self) -> list[list[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col:
                out[i][j] = v
        return out

    def matvec(self, v: Sequence) -> list[Scalar]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.rows
        for j, col in enumerate(self.columns):
            x = v[j]
            if x:
                for i, a in col:
                    out[i] += a * x
        return [as_scalar(x) for x in out]

    def hstack(self, other: GradedMatrix) -> GradedMatrix:
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return GradedMatrix(self.rows, self.cols + other.cols, self.columns + other.columns)


@dataclass(frozen=True)
class Echelon:
    rank: int
    pivots: tuple[int, ...]
    # free column -> kernel vector as {column: value}; None when not requested
    kernel: dict[int, dict[int, Fraction]] | None = None


# ---------------------------------------------------------------- primes


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, rng: random.Random | None = None, bits: int = 31) -> list[int]:
    rng = rng or random.Random()
    out: list[int] = []
    while len(out) < count:
        q = rng.randrange(2 ** (bits - 1), 2**bits) | 1
        if q < _kernels.MAX_PRIME and _is_prime(q) and q not in out:
            out.append(q)
    return out


_PRIME_POOL = random_primes(MAX_PRIMES, random.Random(20191231))


# ---------------------------------------------------------------- blocks


def _components(M: GradedMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected blocks as (sorted rows, sorted cols); empty columns are blocks too."""
    if M.cols == 0:
        return []
    ri, ci = [], []
    for j, col in enumerate(M.columns):
        for i, _ in col:
            ri.append(i)
            ci.append(j)
    n = M.rows + M.cols
    g = coo_matrix((np.ones(len(ri), dtype=np.int8), (np.asarray(ri, dtype=np.int64), np.asarray(ci, dtype=np.int64) + M.rows)), shape=(n, n))
    _, labels = connected_components(g, directed=False)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    col_labels = labels[M.rows:]
    for j in range(M.cols):
        groups.setdefault(int(col_labels[j]), ([], []))[1].append(j)
    row_labels = labels[: M.rows]
    for i in range(M.rows):
        lab = int(row_labels[i])
        if lab in groups:
            groups[lab][0].append(i)
    blocks = sorted(groups.values(), key=lambda rc: rc[1][0])
    return blocks


def _integer_rows(M: GradedMatrix, rows: list[int], cols: list[int]) -> list[dict[int, int]]:
    """Rows of the block with local column indices, scaled to primitive integers."""
    rpos = {r: a for a, r in enumerate(rows)}
    out: list[dict[int, Scalar]] = [dict() for _ in rows]
    for b, j in enumerate(cols):
        for i, v in M.columns[j]:
            out[rpos[i]][b] = v
    res = []
    for r in out:
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        if den != 1:
            r = {k: int(v * den) for k, v in r.items()}
        res.append(_primitive(r))
    return res


def _primitive(r: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = r[min(r)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        for k in r:
            r[k] //= g
    return r


# ---------------------------------------------------------------- exact engine


def _dense(rows: list[dict[int, int]], ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        line = [0] * ncols
        for k, v in r.items():
            line[k] = v
        out.append(line)
    return out


def _bareiss_python(A: list[list[int]], ncols: int, jordan: bool) -> tuple[np.ndarray, list[int]]:
    """Fraction-free elimination; with ``jordan`` also clears above the pivots.

    Every division by the previous pivot is exact (entries stay minors of A).
    In Jordan form all pivot entries equal the last pivot, so the rows are a
    common multiple of the reduced row echelon form.
    """
    M = np.array(A, dtype=object).reshape(len(A), ncols)
    m = M.shape[0]
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(M[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        p = M[r, c]
        # rows below the pivot vanish left of c; rows above need every column rescaled
        others = np.r_[0:r, r + 1:m] if jordan else np.arange(r + 1, m)
        lo = 0 if jordan else c
        if others.size:
            idx = np.ix_(others, range(lo, ncols))
            M[idx] = (p * M[idx] - np.outer(M[others, c], M[r, lo:])) // prev
        pivots.append(c)
        prev = p
        r += 1
    return M[:r], pivots


def _exact_block(rows: list[dict[int, int]], ncols: int, kernel: bool) -> tuple[list[int], dict[int, dict[int, Fraction]] | None]:
    A = _dense(rows, ncols)
    if _flint is not None:
        R, _, rk = _flint.fmpz_mat(A).rref()
        R = [[int(x) for x in row] for row in R.tolist()[:rk]]
        pivots = [next(j for j, x in enumerate(row) if x) for row in R]
    else:
        R, pivots = _bareiss_python(A, ncols, kernel)
        R = R.tolist()
    if not kernel:
        return pivots, None
    pivset = set(pivots)
    ker: dict[int, dict[int, Fraction]] = {c: {c: Fraction(1)} for c in range(ncols) if c not in pivset}
    for row, l in zip(R, pivots):
        lead = row[l]
        for c in ker:
            v = row[c]
            if v:
                ker[c][l] = Fraction(-v, lead)
    return pivots, ker


# ---------------------------------------------------------------- fast engine


def _mod_matrix(rows: list[dict[int, int]], ncols: int, p: int) -> np.ndarray:
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            A[i, k] = v % p
    return A


def _crt_pair(x1, m1: int, x2, m2: int):
    # x1, x2 object arrays; returns combined residues mod m1*m2
    t = ((x2 - x1) * pow(m1, -1, m2)) % m2
    return x1 + m1 * t, m1 * m2


def _ratrecon(x: int, m: int, bound: int) -> tuple[int, int] | None:
    r0, r1 = m, x % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return r1, s1


def _lift_column(x: np.ndarray, m: int, bound: int) -> tuple[list[int], int] | None:
    """Lift residues to integers w and a common denominator D with x = w/D."""
    half = m // 2
    D = 1
    w: list[int] = []
    for val in x:
        val = int(val)
        t = val * D % m
        s = t - m if t > half else t
        if abs(s) <= bound:
            w.append(s)
            continue
        rr = _ratrecon(t, m, bound)
        if rr is None:
            return None
        a, b = rr
        w = [u * b for u in w]
        w.append(a)
        D *= b
        if D > bound:
            return None
    return w, D


def _fast_block(rows: list[dict[int, int]], ncols: int, want_kernel: bool) -> tuple[list[int], dict[int, dict[int, Fraction]] | None] | None:
    nprimes = 3
    primes = _PRIME_POOL[:nprimes]
    reductions = []
    for p in primes:
        A = _mod_matrix(rows, ncols, p)
        r, piv = _kernels.rref_modp(A, p, True)
        reductions.append((r, tuple(int(c) for c in piv), A))
    if len({(r, piv) for r, piv, _ in reductions}) != 1:
        log.info("fast path: primes disagree on rank/pivots, falling back to exact")
        return None
    rank, pivots, _ = reductions[0]
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if not free:
        return list(pivots), ({} if want_kernel else None)

    cols_of: list[list[tuple[int, int]]] = [[] for _ in range(ncols)]
    for i, r in enumerate(rows):
        for k, v in r.items():
            cols_of[k].append((i, v))

    while True:
        # combine residues of -R[:rank, free] across all primes
        X, m = None, 1
        for (r_, piv_, A), p in zip(reductions, primes):
            Xp = ((-A[:rank, free]) % p).astype(object)
            if X is None:
                X, m = Xp, p
            else:
                X, m = _crt_pair(X, m, Xp, p)
        bound = isqrt(m // 2)
        lifted = []
        ok = True
        for j in range(len(free)):
            res = _lift_column(X[:, j], m, bound)
            if res is None:
                ok = False
                break
            lifted.append(res)
        if ok and _verify(cols_of, len(rows), pivots, free, lifted):
            break
        if nprimes + 3 > MAX_PRIMES:
            log.info("fast path: lift failed with %d primes, falling back to exact", nprimes)
            return None
        for p in _PRIME_POOL[nprimes:nprimes + 3]:
            A = _mod_matrix(rows, ncols, p)
            r, piv = _kernels.rref_modp(A, p, True)
            if (r, tuple(int(c) for c in piv)) != (rank, pivots):
                return None
            reductions.append((r, pivots, A))
            primes.append(p)
        nprimes += 3

    ker = None
    if want_kernel:
        ker = {}
        for c, (w, D) in zip(free, lifted):
            vec = {c: Fraction(1)}
            for i, l in enumerate(pivots):
                if w[i]:
                    vec[l] = Fraction(w[i], D)
            ker[c] = vec
    return list(pivots), ker


def _verify(cols_of, nrows: int, pivots, free, lifted) -> bool:
    """Exact check of M[:, pivots] @ W + M[:, free] * D == 0."""
    nf = len(free)
    W = np.empty((len(pivots), nf), dtype=object)
    Dv = np.empty(nf, dtype=object)
    for j, (w, D) in enumerate(lifted):
        W[:, j] = w
        Dv[j] = D
    res = np.zeros((nrows, nf), dtype=object)
    for i, l in enumerate(pivots):
        Wi = W[i]
        for row, v in cols_of[l]:
            res[row] += v * Wi
    for j, c in enumerate(free):
        for row, v in cols_of[c]:
            res[row, j] += v * Dv[j]
    return not np.any(res != 0)


# ---------------------------------------------------------------- public API


def _check_field(field: str):
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")


def echelon(M: GradedMatrix, field: str = "exact", kernel: bool = False) -> Echelon:
    _check_field(field)
    pivots: list[int] = []
    ker: dict[int, dict[int, Fraction]] | None = {} if kernel else None
    for brows, bcols in _components(M):
        rows = _integer_rows(M, brows, bcols)
        if not rows:
            if kernel:
                for c in bcols:
                    ker[c] = {c: Fraction(1)}
            continue
        res = None
        if field == "fast" and len(rows) * len(bcols) >= FAST_MIN_ENTRIES:
            stats["fast_blocks"] += 1
            res = _fast_block(rows, len(bcols), kernel)
            if res is None:
                stats["fast_fallbacks"] += 1
        if res is None:
            stats["exact_blocks"] += 1
            res = _exact_block(rows, len(bcols), kernel)
        bp, bk = res
        pivots.extend(bcols[c] for c in bp)
        if kernel:
            for c, vec in bk.items():
                ker[bcols[c]] = {bcols[k]: v for k, v in vec.items()}
    pivots.sort()
    return Echelon(len(pivots), tuple(pivots), ker)


def rank(M: GradedMatrix, field: str = "exact") -> int:
    return echelon(M, field).rank


def pivot_columns(M: GradedMatrix, field: str = "exact") -> tuple[int, ...]:
    return echelon(M, field).pivots


def nullspace(M: GradedMatrix, field: str = "exact") -> list[tuple[Fraction, ...]]:
    """Reduced kernel basis, one vector per free column in increasing order."""
    e = echelon(M, field, kernel=True)
    out = []
    for c in sorted(e.kernel):
        v = [Fraction(0)] * M.cols
        for k, x in e.kernel[c].items():
            v[k] = x
        out.append(tuple(v))
    return out


def rank_mod_p(M: GradedMatrix, p: int) -> int:
    """Rank over F_p of the row-integral form of M (rows scaled as in exact mode)."""
    total = 0
    for brows, bcols in _components(M):
        rows = _integer_rows(M, brows, bcols)
        if rows:
            A = _mod_matrix(rows, len(bcols), p)
            total += _kernels.rref_modp(A, p, False)[0]
    return total
