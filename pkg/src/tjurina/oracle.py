"""Independent brute-force checks and instance constructors.

Nothing here reuses the syzygy matrices: the Tjurina number comes from the
Hilbert function of ``S/J_f`` and defects from evaluating monomials at
points, so agreement with ``tjurina.syzygy`` is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Sequence

from . import linalg
from .errors import NoStabilization, NotSingular
from .linalg import GradedMatrix
from .poly import HomogeneousPoly, Scalar, as_scalar, dim_S, mono_mul, monomial_index, monomials_of_degree, partial_derivative


@dataclass(frozen=True)
class SingularPoint:
    """A projective point certified to be singular on V: f = f_0 = ... = f_n = 0."""

    coords: tuple[Scalar, ...]
    claims: tuple[str, ...] = ()

    @classmethod
    def certify(cls, f: HomogeneousPoly, coords: Sequence, claims: Sequence[str] = ()) -> SingularPoint:
        pt = tuple(as_scalar(c) for c in coords)
        if len(pt) != f.n_vars:
            raise NotSingular(f"point {pt} has {len(pt)} coordinates, expected {f.n_vars}")
        if all(c == 0 for c in pt):
            raise NotSingular("the zero vector is not a projective point")
        if f.evaluate(pt) != 0:
            raise NotSingular(f"point {pt} is not on V")
        for j in range(f.n_vars):
            if partial_derivative(f, j).evaluate(pt) != 0:
                raise NotSingular(f"point {pt} is a smooth point of V (f_{j} != 0)")
        return cls(pt, tuple(claims))


def _same_projective_point(a: Sequence, b: Sequence) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class NodalConfiguration:
    """Points asserted by the caller to be ordinary nodes (local algebra of dimension 1)."""

    points: tuple[SingularPoint, ...]

    def __post_init__(self):
        pts = self.points
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _same_projective_point(pts[i].coords, pts[j].coords):
                    raise ValueError(f"points {i} and {j} coincide projectively")

    @classmethod
    def for_poly(cls, f: HomogeneousPoly, points: Sequence[Sequence]) -> NodalConfiguration:
        return cls(tuple(SingularPoint.certify(f, p, ("node",)) for p in points))

    @classmethod
    def bare(cls, points: Sequence[Sequence]) -> NodalConfiguration:
        """Configuration of points without a curve (evaluation tests only)."""
        return cls(tuple(SingularPoint(tuple(as_scalar(c) for c in p)) for p in points))


def jacobian_ideal_matrix(f: HomogeneousPoly, k: int) -> GradedMatrix:
    """(S_{k-d+1})^{n+1} -> S_k, (g_j) -> sum g_j f_j."""
    nv = f.n_vars
    tgt = monomial_index(nv, k)
    src_deg = k - f.degree + 1
    src = monomials_of_degree(nv, src_deg) if src_deg >= 0 else ()
    cols = []
    for j in range(nv):
        fj = list(partial_derivative(f, j).items())
        for g in src:
            cols.append([(tgt[mono_mul(g, t)], c) for t, c in fj])
    return GradedMatrix.from_columns(len(tgt), cols)


@lru_cache(maxsize=4096)
def milnor_algebra_dim(f: HomogeneousPoly, k: int, field: str = "exact") -> int:
    """dim (S/J_f)_k."""
    if k < f.degree - 1:
        return dim_S(f.n_vars, k)
    return dim_S(f.n_vars, k) - linalg.rank(jacobian_ideal_matrix(f, k), field)


def hilbert_tau(f: HomogeneousPoly, cap: int | None = None, field: str = "exact") -> int:
    """Stable value of dim (S/J_f)_k past n(d-2): three equal values in a row."""
    n, d = f.n_vars - 1, f.degree
    start = n * (d - 2) + 1
    if cap is None:
        # (S/J_f)_k has its socle in degree (n+1)(d-2) when V is smooth; for n = 1
        # the window must reach three degrees past it
        cap = max((n + 1) * (d - 1), (n + 1) * (d - 2) + 3)
    seen: list[int] = []
    for k in range(start, cap + 1):
        seen.append(milnor_algebra_dim(f, k, field))
        if len(seen) >= 3 and seen[-1] == seen[-2] == seen[-3]:
            return seen[-1]
    raise NoStabilization("Hilbert function of S/J_f did not stabilize; non-isolated singularities suspected", {"from": start, "cap": cap, "values": seen})


def evaluation_matrix(points: Sequence[Sequence], n_vars: int, k: int) -> GradedMatrix:
    mons = monomials_of_degree(n_vars, k)
    pts = [tuple(as_scalar(c) for c in p) for p in points]
    cols = []
    for m in mons:
        col = []
        for i, p in enumerate(pts):
            v = 1
            for x, e in zip(p, m):
                if e:
                    v *= x**e
            col.append((i, v))
        cols.append(col)
    return GradedMatrix.from_columns(len(pts), cols)


def nodal_defect(config: NodalConfiguration, k: int, field: str = "exact") -> int:
    """dim coker of S_k -> C^{#points}, h -> (h(p))_p."""
    if k < 0:
        raise ValueError("k must be non-negative")
    pts = [p.coords for p in config.points]
    if not pts:
        return 0
    M = evaluation_matrix(pts, len(pts[0]), k)
    return len(pts) - linalg.rank(M, field)


def brieskorn_tau(exponents: Sequence[int]) -> int:
    """Milnor (= Tjurina) number of the germ sum y_i^{a_i}."""
    if not exponents or any(a < 2 for a in exponents):
        raise ValueError("Brieskorn exponents must all be >= 2")
    return prod(a - 1 for a in exponents)


def suspend(f: HomogeneousPoly, n: int) -> HomogeneousPoly:
    """f(x_0..x_{n'}) + x_{n'+1}^d + ... + x_n^d in n+1 variables."""
    n_prime = f.n_vars - 1
    if n <= n_prime:
        raise ValueError(f"target dimension {n} must exceed {n_prime}")
    if f.degree < 2:
        raise ValueError("need degree >= 2")
    g = f.homogenize_to(n + 1)
    terms = dict(g.items())
    for i in range(n_prime + 1, n + 1):
        e = [0] * (n + 1)
        e[i] = f.degree
        terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return HomogeneousPoly(n + 1, f.degree, terms)
