from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tjurina import _kernels, linalg
from tjurina.linalg import GradedMatrix


def test_small_examples():
    eye = GradedMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert linalg.nullspace(eye) == []
    assert linalg.rank(eye) == 3
    zero = GradedMatrix.from_dense([[0] * 4, [0] * 4])
    assert len(linalg.nullspace(zero)) == 4
    assert linalg.rank(zero) == 0
    ones = GradedMatrix.from_dense([[1] * 3] * 3)
    assert linalg.rank(ones) == 1
    row = GradedMatrix.from_dense([[1, 1]])
    assert linalg.nullspace(row) == [(Fraction(-1), Fraction(1))]


def test_empty_and_degenerate_shapes():
    assert linalg.rank(GradedMatrix(0, 0, ())) == 0
    M = GradedMatrix.from_columns(3, [[], [], []])
    assert linalg.rank(M) == 0 and len(linalg.nullspace(M)) == 3
    M = GradedMatrix.from_columns(0, [[], []])
    assert len(linalg.nullspace(M)) == 2


def test_from_columns_validates():
    with pytest.raises(IndexError):
        GradedMatrix.from_columns(2, [[(5, 1)]])
    with pytest.raises(ValueError):
        GradedMatrix.from_dense([[1, 2], [3]])
    M = GradedMatrix.from_columns(2, [[(0, 1), (0, -1), (1, 2)]])
    assert M.columns == (((1, 2),),)


def test_pivots_are_greedy():
    M = GradedMatrix.from_dense([[0, 1, 2, 0], [0, 2, 4, 1]])
    assert linalg.pivot_columns(M) == (1, 3)


def test_block_decomposition_preserves_answer():
    # two disconnected blocks interleaved in row and column order
    A = [[1, 0, 2, 0], [0, 3, 0, 6], [2, 0, 4, 0], [0, 1, 0, 1]]
    M = GradedMatrix.from_dense(A)
    assert len(linalg._components(M)) == 2
    assert linalg.rank(M) == sympy.Matrix(A).rank()
    assert linalg.pivot_columns(M) == tuple(sympy.Matrix(A).rref()[1])


_entry = st.one_of(st.just(0), st.just(0), st.integers(-6, 6), st.fractions(max_denominator=4).filter(lambda q: abs(q) < 8))


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = [draw(st.lists(_entry, min_size=n, max_size=n)) for _ in range(m)]
    if m > 2 and draw(st.booleans()):
        # force a dependency
        rows[-1] = [a - 2 * b for a, b in zip(rows[0], rows[1])]
    return rows


def _sym(v):
    return tuple(sympy.Rational(x.numerator, x.denominator) for x in map(Fraction, v))


@given(matrices())
def test_against_sympy(A):
    M = GradedMatrix.from_dense(A)
    S = sympy.Matrix(A)
    _, piv = S.rref()
    assert linalg.rank(M) == S.rank()
    assert linalg.pivot_columns(M) == tuple(piv)
    assert [_sym(v) for v in linalg.nullspace(M)] == [tuple(v) for v in S.nullspace()]


@given(matrices())
def test_nullspace_rank_consistency(A):
    M = GradedMatrix.from_dense(A)
    ns = linalg.nullspace(M)
    assert len(ns) + linalg.rank(M) == M.cols
    for v in ns:
        assert all(x == 0 for x in M.matvec(v))


@given(matrices(9, 9))
def test_fast_matches_exact(A):
    M = GradedMatrix.from_dense(A)
    old = linalg.FAST_MIN_ENTRIES
    linalg.FAST_MIN_ENTRIES = 0
    try:
        assert linalg.echelon(M, "fast", kernel=True) == linalg.echelon(M, "exact", kernel=True)
    finally:
        linalg.FAST_MIN_ENTRIES = old


@given(matrices(8, 8))
def test_python_engine_matches_flint(A):
    M = GradedMatrix.from_dense(A)
    expected = linalg.echelon(M, "exact", kernel=True)
    saved = linalg._flint
    linalg._flint = None
    try:
        assert linalg.echelon(M, "exact", kernel=True) == expected
    finally:
        linalg._flint = saved


@given(matrices(), st.sampled_from(linalg._PRIME_POOL[:3]))
def test_rank_mod_p(A, p):
    # a ~31-bit random prime divides none of the minors of these small matrices
    M = GradedMatrix.from_dense(A)
    assert linalg.rank_mod_p(M, p) == linalg.rank(M)


def test_rank_mod_small_prime_can_drop():
    M = GradedMatrix.from_dense([[1, 2], [3, 1]])  # det = -5
    assert linalg.rank(M) == 2
    assert linalg.rank_mod_p(M, 5) == 1


def test_fast_path_large_dense_with_big_entries():
    rng = np.random.default_rng(3)
    left = rng.integers(-50, 50, (40, 25))
    right = rng.integers(-50, 50, (25, 45))
    A = (left @ right).tolist()
    M = GradedMatrix.from_dense(A)
    fast = linalg.echelon(M, "fast", kernel=True)
    assert fast == linalg.echelon(M, "exact", kernel=True)
    assert fast.rank == 25


def test_fast_falls_back_when_lift_fails(monkeypatch):
    monkeypatch.setattr(linalg, "MAX_PRIMES", 3)
    monkeypatch.setattr(linalg, "FAST_MIN_ENTRIES", 0)
    before = linalg.stats["fast_fallbacks"]
    # kernel entries with huge denominators cannot be recovered from three primes
    big = 2**70 + 1
    A = [[big, 1, 0], [0, big, 1]]
    M = GradedMatrix.from_dense(A)
    assert linalg.echelon(M, "fast", kernel=True) == linalg.echelon(M, "exact", kernel=True)
    assert linalg.stats["fast_fallbacks"] == before + 1


def test_ratrecon():
    m = linalg._PRIME_POOL[0] * linalg._PRIME_POOL[1]
    x = -7 * pow(13, -1, m) % m
    assert linalg._ratrecon(x, m, 10**6) == (-7, 13)


def test_unknown_field():
    with pytest.raises(ValueError):
        linalg.rank(GradedMatrix.from_dense([[1]]), "float")


def test_kernels_agree():
    p = linalg._PRIME_POOL[0]
    rng = np.random.default_rng(0)
    for shape in ((5, 9), (12, 7), (30, 30)):
        A = rng.integers(0, p, shape, dtype=np.int64)
        A[-1] = (A[0] + 3 * A[1]) % p
        ref = _kernels.rref_modp_numpy(A.copy(), p, True)
        B = A.copy()
        out = _kernels.rref_modp(B, p, True)
        assert out[0] == ref[0]
        assert list(out[1]) == list(ref[1])
        # rank-only mode gives the same rank
        assert _kernels.rref_modp(A.copy(), p, False)[0] == ref[0]


def test_backend_name():
    assert _kernels.backend() in ("numba", "numpy")


@pytest.mark.parametrize(
    "env, expr, expected",
    [
        ({"TJURINA_DISABLE_NUMBA": "1"}, "_kernels.backend()", "numpy"),
        ({"TJURINA_DISABLE_FLINT": "1"}, "linalg._flint is None", "True"),
    ],
)
def test_env_switches(env, expr, expected):
    import os
    import subprocess
    import sys

    code = f"from tjurina import _kernels, linalg, syzygy, parsing; print({expr}); print(syzygy.graded_dims(parsing.parse_poly('x0^5 + x1^4*x2'), field='fast').rows[-1])"
    out = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env}, capture_output=True, text=True, check=True).stdout.split("\n")
    assert out[0] == expected
    assert out[1] == "(7, 42, 30, 12)"
