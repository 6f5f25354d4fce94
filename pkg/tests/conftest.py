from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from tjurina.poly import HomogeneousPoly, monomials_of_degree

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("default")

# acceptance lines collected by tests/test_acceptance.py, printed in the summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def random_form(rng: random.Random, n_vars: int, d: int, density: float = 0.4, drop=()) -> HomogeneousPoly:
    """Random sparse form with small integer (occasionally rational) coefficients."""
    terms = {}
    for m in monomials_of_degree(n_vars, d):
        if m in drop or rng.random() > density:
            continue
        c = rng.choice([1, -1, 2, -3, 5, Fraction(1, 2), Fraction(-2, 3)])
        terms[m] = c
    return HomogeneousPoly(n_vars, d, terms)


def substitute_linear(f: HomogeneousPoly, forms: list[HomogeneousPoly]) -> HomogeneousPoly:
    """f(l_0, ..., l_n) for linear forms l_i in a possibly different ring."""
    nv = forms[0].n_vars
    acc = HomogeneousPoly.zero(nv, f.degree)
    for m, c in f.items():
        t = HomogeneousPoly(nv, 0, {(0,) * nv: c})
        for l, e in zip(forms, m):
            if e:
                t = t * l**e
        acc = acc + t
    return acc


def linear_form(coeffs) -> HomogeneousPoly:
    n = len(coeffs)
    return HomogeneousPoly(n, 1, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})


def random_invertible(rng: random.Random, n: int) -> list[list[int]]:
    import sympy

    while True:
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if sympy.Matrix(A).det() != 0:
            return A


@pytest.fixture
def rng():
    return random.Random(1234)


def hessian_determinant(f: HomogeneousPoly) -> HomogeneousPoly:
    """det of the Hessian; for at most 4 variables it vanishes exactly on cones."""
    import itertools

    from sympy.combinatorics import Permutation

    nv = f.n_vars
    H = [[f.derivative(i).derivative(j) for j in range(nv)] for i in range(nv)]
    acc = None
    for perm in itertools.permutations(range(nv)):
        t = H[0][perm[0]]
        for i in range(1, nv):
            t = t * H[i][perm[i]]
        t = t.scale(Permutation(list(perm)).signature())
        acc = t if acc is None else acc + t
    return acc


def singular_curve(rng: random.Random, d: int) -> tuple[HomogeneousPoly, tuple]:
    """Random plane curve of degree d singular at a random rational point.

    A sparse form singular at (0:0:1) (no x2^d, x2^(d-1)*x0, x2^(d-1)*x1 terms)
    pulled back along a random invertible integer substitution.
    """
    import sympy

    drop = {(0, 0, d), (1, 0, d - 1), (0, 1, d - 1)}
    while True:
        g = random_form(rng, 3, d, density=0.5, drop=drop)
        if not g.is_zero():
            break
    A = random_invertible(rng, 3)
    f = substitute_linear(g, [linear_form(row) for row in A])
    p = sympy.Matrix(A).inv() * sympy.Matrix([0, 0, 1])
    return f, tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in p)


def constructed_cone(rng: random.Random, d: int) -> HomogeneousPoly:
    """g(l1, l2) for a random binary form g and two independent linear forms."""
    while True:
        g = random_form(rng, 2, d, density=0.7)
        if not g.is_zero():
            break
    while True:
        l1 = [rng.randint(-2, 2) for _ in range(3)]
        l2 = [rng.randint(-2, 2) for _ in range(3)]
        cross = (l1[1] * l2[2] - l1[2] * l2[1], l1[2] * l2[0] - l1[0] * l2[2], l1[0] * l2[1] - l1[1] * l2[0])
        if any(cross):
            return substitute_linear(g, [linear_form(l1), linear_form(l2)])
