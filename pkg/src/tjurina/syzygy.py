"""Graded pieces of the Jacobian syzygy module and its Koszul part.

For ``f`` of degree ``d`` in ``n+1`` variables:

* ``AR(f)_k`` is the kernel of ``(S_k)^{n+1} -> S_{k+d-1}``,
  ``(a_0..a_n) -> sum a_j f_j``;
* ``KR(f)_k`` is the image of ``(S_{k-d+1})^{C(n+1,2)} -> (S_k)^{n+1}``,
  sending the ``(i, j)`` generator ``g`` to ``g*(f_j e_i - f_i e_j)``;
* ``ER(f)_k = AR(f)_k / KR(f)_k``.

Columns of the AR matrix are ordered by variable index, then by monomial
(largest first); rows follow the monomial order of ``S_{k+d-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from . import linalg
from .errors import ConeInput, InvariantViolation, NonIsolatedOrBug, UnsupportedInput
from .linalg import GradedMatrix
from .poly import HomogeneousPoly, as_scalar, mono_mul, monomial_index, monomials_of_degree, partial_derivative


@dataclass(frozen=True)
class SyzygyVector:
    degree: int
    components: tuple[HomogeneousPoly, ...]

    def pairing(self, f: HomogeneousPoly) -> HomogeneousPoly:
        """sum_j a_j * f_j"""
        parts = jacobian(f)
        acc = HomogeneousPoly.zero(f.n_vars, self.degree + f.degree - 1)
        for a, fj in zip(self.components, parts):
            acc = acc + a * fj
        return acc

    def is_syzygy_of(self, f: HomogeneousPoly) -> bool:
        return self.pairing(f).is_zero()

    def evaluate(self, point) -> tuple:
        return tuple(a.evaluate(point) for a in self.components)

    def scaled(self, c) -> SyzygyVector:
        return SyzygyVector(self.degree, tuple(a.scale(c) for a in self.components))

    def __add__(self, other: SyzygyVector) -> SyzygyVector:
        return SyzygyVector(self.degree, tuple(a + b for a, b in zip(self.components, other.components)))

    def primitive(self) -> SyzygyVector:
        """Integral, content-free scalar multiple whose first nonzero coefficient is positive."""
        coeffs = [Fraction(c) for a in self.components for _, c in a.items()]
        if not coeffs:
            return self
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in coeffs:
            num = gcd(num, int(c * den))
        first = next(c for c in _syzygy_to_vector(self) if c)
        scale = Fraction(den, num) * (1 if first > 0 else -1)
        return self.scaled(scale)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.components) + ")"


@dataclass(frozen=True)
class GradedDims:
    n: int
    d: int
    rows: tuple[tuple[int, int, int, int], ...]  # (k, ar, kr, er)

    def ar(self, k: int) -> int:
        return self.rows[k][1]

    def kr(self, k: int) -> int:
        return self.rows[k][2]

    def er(self, k: int) -> int:
        return self.rows[k][3]

    @property
    def cap(self) -> int:
        return len(self.rows) - 1


def _require_degree(f: HomogeneousPoly):
    if f.degree < 2:
        raise UnsupportedInput(f"degree {f.degree} is not supported (need d >= 2)")


@lru_cache(maxsize=256)
def jacobian(f: HomogeneousPoly) -> tuple[HomogeneousPoly, ...]:
    if f.degree < 1:
        raise UnsupportedInput("need a form of degree >= 1")
    return tuple(partial_derivative(f, j) for j in range(f.n_vars))


def has_zero_partial(f: HomogeneousPoly) -> bool:
    """Sufficient (not necessary) test for V being a cone."""
    return any(g.is_zero() for g in jacobian(f))


def ar_matrix(f: HomogeneousPoly, k: int) -> GradedMatrix:
    _require_degree(f)
    nv = f.n_vars
    parts = jacobian(f)
    src = monomials_of_degree(nv, k) if k >= 0 else ()
    tgt_deg = k + f.degree - 1
    tgt = monomial_index(nv, tgt_deg)
    part_items = [list(g.items()) for g in parts]
    columns = []
    col_basis = []
    for j in range(nv):
        items = part_items[j]
        for m in src:
            columns.append([(tgt[mono_mul(m, t)], c) for t, c in items])
            col_basis.append((j, m))
    return GradedMatrix.from_columns(len(tgt), columns, monomials_of_degree(nv, tgt_deg), tuple(col_basis))


def koszul_matrix(f: HomogeneousPoly, k: int) -> GradedMatrix:
    """Coordinate matrix of the Koszul map into (S_k)^{n+1}."""
    _require_degree(f)
    nv = f.n_vars
    parts = jacobian(f)
    row_mons = monomial_index(nv, k)
    size = len(row_mons)
    src_deg = k - f.degree + 1
    src = monomials_of_degree(nv, src_deg) if src_deg >= 0 else ()
    columns = []
    col_basis = []
    for i, j in combinations(range(nv), 2):
        fi, fj = list(parts[i].items()), list(parts[j].items())
        for g in src:
            col = [(i * size + row_mons[mono_mul(g, t)], c) for t, c in fj]
            col += [(j * size + row_mons[mono_mul(g, t)], -c) for t, c in fi]
            columns.append(col)
            col_basis.append(((i, j), g))
    row_basis = tuple((j, m) for j in range(nv) for m in monomials_of_degree(nv, k))
    return GradedMatrix.from_columns(nv * size, columns, row_basis, tuple(col_basis))


def _vector_to_syzygy(f: HomogeneousPoly, k: int, v) -> SyzygyVector:
    nv = f.n_vars
    mons = monomials_of_degree(nv, k)
    size = len(mons)
    comps = []
    for j in range(nv):
        comps.append(HomogeneousPoly(nv, k, {m: v[j * size + a] for a, m in enumerate(mons) if v[j * size + a]}))
    return SyzygyVector(k, tuple(comps))


def _syzygy_to_vector(s: SyzygyVector) -> list:
    nv = len(s.components)
    mons = monomials_of_degree(nv, s.degree)
    return [a.coeff(m) for a in s.components for m in mons]


@lru_cache(maxsize=512)
def ar_basis(f: HomogeneousPoly, k: int, field: str = "exact") -> tuple[SyzygyVector, ...]:
    if k < 0:
        return ()
    M = ar_matrix(f, k)
    out = []
    for v in linalg.nullspace(M, field):
        s = _vector_to_syzygy(f, k, v).primitive()
        if not s.is_syzygy_of(f):
            raise InvariantViolation(f"kernel vector in degree {k} is not a syzygy")
        out.append(s)
    return tuple(out)


@lru_cache(maxsize=4096)
def ar_dim(f: HomogeneousPoly, k: int, field: str = "exact") -> int:
    if k < 0:
        return 0
    M = ar_matrix(f, k)
    return M.cols - linalg.rank(M, field)


@lru_cache(maxsize=4096)
def kr_dim(f: HomogeneousPoly, k: int, field: str = "exact") -> int:
    if k < f.degree - 1:
        return 0
    return linalg.rank(koszul_matrix(f, k), field)


def er_dim(f: HomogeneousPoly, k: int, field: str = "exact") -> int:
    e = ar_dim(f, k, field) - kr_dim(f, k, field)
    if e < 0:
        raise InvariantViolation(f"dim ER_{k} = {e} < 0: KR is not inside AR")
    return e


def koszul_elements(f: HomogeneousPoly, k: int) -> list[SyzygyVector]:
    """The spanning set g*(f_j e_i - f_i e_j) of KR(f)_k, one per column."""
    M = koszul_matrix(f, k)
    out = []
    for col in M.columns:
        v = [0] * M.rows
        for i, c in col:
            v[i] = c
        out.append(_vector_to_syzygy(f, k, v))
    return out


@lru_cache(maxsize=512)
def er_basis(f: HomogeneousPoly, k: int, field: str = "exact") -> tuple[SyzygyVector, ...]:
    """Coset representatives of a basis of ER(f)_k.

    The Koszul image columns come first; the AR basis vectors that are pivot
    columns of ``[KR | AR basis]`` are returned.
    """
    basis = ar_basis(f, k, field)
    if not basis:
        return ()
    K = koszul_matrix(f, k) if k >= f.degree - 1 else GradedMatrix(f.n_vars * len(monomials_of_degree(f.n_vars, k)), 0, ())
    ar_cols = [[(i, x) for i, x in enumerate(_syzygy_to_vector(s)) if x] for s in basis]
    stacked = K.hstack(GradedMatrix.from_columns(K.rows, ar_cols))
    piv = linalg.pivot_columns(stacked, field)
    reps = tuple(basis[c - K.cols] for c in piv if c >= K.cols)
    if len(reps) != ar_dim(f, k, field) - kr_dim(f, k, field):
        raise InvariantViolation(f"ER representative count mismatch in degree {k}")
    return reps


def is_cone(f: HomogeneousPoly, field: str = "exact") -> bool:
    return ar_dim(f, 0, field) > 0


def mdr(f: HomogeneousPoly, field: str = "exact") -> int:
    """Minimal degree of a Jacobian relation; 0 exactly for cones."""
    _require_degree(f)
    for k in range(f.degree):
        if ar_dim(f, k, field):
            return k
    raise InvariantViolation(f"no syzygy found in degrees 0..{f.degree - 1}")


def mder(f: HomogeneousPoly, field: str = "exact") -> int | None:
    """Minimal degree of an essential relation, None when ER vanishes through n(d-2)."""
    _require_degree(f)
    n = f.n_vars - 1
    for k in range(n * (f.degree - 2) + 1):
        if er_dim(f, k, field):
            return k
    return None


def graded_dims(f: HomogeneousPoly, cap: int | None = None, field: str = "exact") -> GradedDims:
    _require_degree(f)
    n, d = f.n_vars - 1, f.degree
    top = n * (d - 2)
    if cap is None:
        cap = top + 1
    if cap < top:
        raise ValueError(f"cap must be at least n(d-2) = {top}")
    rows = []
    for k in range(cap + 1):
        a, c = ar_dim(f, k, field), kr_dim(f, k, field)
        if a < c:
            raise InvariantViolation(f"dim ER_{k} < 0")
        rows.append((k, a, c, a - c))
    stable = rows[top][3]
    for k, _, _, e in rows[top:]:
        if e != stable:
            raise NonIsolatedOrBug("ER dimension does not stabilize from n(d-2)", {"n(d-2)": top, f"er[{top}]": stable, f"er[{k}]": e})
    return GradedDims(n, d, tuple(rows))


def require_not_cone(f: HomogeneousPoly, field: str = "exact"):
    if is_cone(f, field):
        raise ConeInput("V is a cone (a constant syzygy exists); invariants are not defined")


def syzygy_from_polys(components, degree: int | None = None) -> SyzygyVector:
    comps = tuple(components)
    deg = degree if degree is not None else comps[0].degree
    return SyzygyVector(deg, comps)


def proportional(a: SyzygyVector, b: SyzygyVector) -> bool:
    """Whether a and b are nonzero scalar multiples of each other."""
    va, vb = _syzygy_to_vector(a), _syzygy_to_vector(b)
    ratio = None
    for x, y in zip(va, vb):
        if (x == 0) != (y == 0):
            return False
        if x:
            r = Fraction(as_scalar(x)) / Fraction(as_scalar(y))
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None


def clear_caches():
    """Drop memoized matrices and dimensions (used before timed runs)."""
    from . import oracle

    for fn in (jacobian, ar_basis, ar_dim, kr_dim, er_basis, oracle.milnor_algebra_dim):
        fn.cache_clear()
