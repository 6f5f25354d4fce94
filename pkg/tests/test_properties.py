from __future__ import annotations

import random

from hypothesis import given
from hypothesis import strategies as st

from conftest import constructed_cone, hessian_determinant, random_form, singular_curve
from tjurina import linalg, syzygy
from tjurina.linalg import GradedMatrix
from tjurina.poly import euler_check

seeds = st.integers(0, 2**32 - 1)
degrees = st.integers(2, 6)


@given(seeds, degrees)
def test_constructed_cones_are_detected(seed, d):
    f = constructed_cone(random.Random(seed), d)
    assert syzygy.ar_dim(f, 0) > 0
    assert syzygy.mdr(f) == 0


@given(seeds, degrees)
def test_cone_detection_matches_hessian(seed, d):
    f = random_form(random.Random(seed), 3, d, density=0.5)
    if f.is_zero():
        return
    assert (syzygy.ar_dim(f, 0) > 0) == hessian_determinant(f).is_zero()


@given(seeds, degrees)
def test_euler(seed, d):
    assert euler_check(random_form(random.Random(seed), 3, d))


@given(seeds, degrees)
def test_koszul_vanishes_at_singular_points(seed, d):
    f, p = singular_curve(random.Random(seed), d)
    assert f.evaluate(p) == 0
    for k in range(d - 1, d + 2):
        for kappa in syzygy.koszul_elements(f, k):
            assert not any(kappa.evaluate(p))


@given(seeds, st.integers(2, 5))
def test_kr_inside_ar(seed, d):
    f, _ = singular_curve(random.Random(seed), d)
    for k in range(d - 1, 2 * (d - 2) + 2):
        A = syzygy.ar_matrix(f, k)
        K = syzygy.koszul_matrix(f, k)
        for col in K.columns:
            v = [0] * K.rows
            for i, c in col:
                v[i] = c
            assert not any(A.matvec(v))
        assert syzygy.kr_dim(f, k) <= syzygy.ar_dim(f, k)


@given(seeds, st.integers(3, 5))
def test_mdr_mder_relation(seed, d):
    rng = random.Random(seed)
    f = random_form(rng, 3, d, density=0.6)
    if f.is_zero() or syzygy.is_cone(f):
        return
    r = syzygy.mdr(f)
    m = syzygy.mder(f)
    if m is not None:
        assert r <= m
        if r < d - 1:
            assert r == m


@given(seeds, st.integers(2, 4))
def test_ar_basis_members_are_syzygies(seed, d):
    f, _ = singular_curve(random.Random(seed), d)
    for k in range(0, d + 1):
        basis = syzygy.ar_basis(f, k)
        assert len(basis) == syzygy.ar_dim(f, k)
        for s in basis:
            assert s.is_syzygy_of(f)


@given(seeds)
def test_rank_basis_order_independent(seed):
    rng = random.Random(seed)
    f, _ = singular_curve(rng, rng.randint(2, 5))
    M = syzygy.ar_matrix(f, 2)
    perm = list(range(M.cols))
    rng.shuffle(perm)
    shuffled = GradedMatrix(M.rows, M.cols, tuple(M.columns[j] for j in perm))
    assert linalg.rank(shuffled) == linalg.rank(M)
