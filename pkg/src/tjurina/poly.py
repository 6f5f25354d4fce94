"""Exact scalars, monomials and sparse homogeneous polynomials.

Monomials are plain tuples of exponents.  Within a degree they are ordered
lexicographically with ``x0 > x1 > ... > xn``, and enumerations list the
largest monomial first, so ``monomials_of_degree(2, 3)`` is
``x0^3, x0^2*x1, x0*x1^2, x1^3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import ModulusMismatch

Monomial = tuple[int, ...]
Scalar = int | Fraction


def as_scalar(value) -> Scalar:
    """Normalize to ``int`` when integral, otherwise a reduced ``Fraction``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, Rational)):
        q = Fraction(value)
    elif isinstance(value, str):
        q = Fraction(value.strip())
    else:
        raise TypeError(f"inexact or unsupported scalar {value!r}")
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class ModP:
    """Element of the prime field F_p."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ModulusMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        return ModP(self.value + self._check(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.value - self._check(other), self.p)

    def __rsub__(self, other):
        return ModP(self._check(other) - self.value, self.p)

    def __mul__(self, other):
        return ModP(self.value * self._check(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def inverse(self) -> ModP:
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * ModP(self._check(other), self.p).inverse()

    def __bool__(self):
        return self.value != 0


@lru_cache(maxsize=None)
def monomials_of_degree(n_vars: int, k: int) -> tuple[Monomial, ...]:
    if n_vars < 1 or k < 0:
        raise ValueError(f"need n_vars >= 1 and k >= 0, got ({n_vars}, {k})")
    out = []
    for combo in itertools.combinations_with_replacement(range(n_vars), k):
        e = [0] * n_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # combinations_with_replacement already yields descending lex order
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(n_vars, k))}


def dim_S(n_vars: int, k: int) -> int:
    return comb(k + n_vars - 1, n_vars - 1) if k >= 0 else 0


def monomial_key(m: Monomial):
    """Sort key realizing the graded-lex order (ascending)."""
    return (sum(m), m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_str(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


class HomogeneousPoly:
    """Immutable sparse homogeneous polynomial with exact coefficients."""

    __slots__ = ("n_vars", "degree", "_terms", "_hash")

    def __init__(self, n_vars: int, degree: int, terms: Mapping[Monomial, object] | Iterable = ()):
        if n_vars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Scalar] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != n_vars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {n_vars} variables")
            if sum(m) != degree:
                raise ValueError(f"monomial {mono_str(m)} has degree {sum(m)}, expected {degree}")
            acc[m] = acc.get(m, 0) + as_scalar(c)
        self.n_vars = n_vars
        self.degree = degree
        self._terms = {m: as_scalar(c) for m, c in sorted(acc.items(), key=lambda t: monomial_key(t[0]), reverse=True) if c != 0}
        self._hash = None

    @classmethod
    def zero(cls, n_vars: int, degree: int) -> HomogeneousPoly:
        return cls(n_vars, degree, {})

    @classmethod
    def var(cls, i: int, n_vars: int) -> HomogeneousPoly:
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, 1, {tuple(e): 1})

    @classmethod
    def monomial(cls, m: Sequence[int], coeff=1) -> HomogeneousPoly:
        return cls(len(m), sum(m), {tuple(m): coeff})

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial) -> Scalar:
        return self._terms.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.n_vars != other.n_vars or self._terms != other._terms:
            return False
        # zero polynomials of different degrees are different elements of S
        return self.degree == other.degree

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, self.degree, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"HomogeneousPoly({self.n_vars}, {self.degree}, {render(self)!r})"

    def __str__(self):
        return render(self)

    def _compatible(self, other: HomogeneousPoly):
        if self.n_vars != other.n_vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        self._compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degrees is not homogeneous")
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return HomogeneousPoly(self.n_vars, self.degree, acc)

    def __neg__(self):
        return HomogeneousPoly(self.n_vars, self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> HomogeneousPoly:
        c = as_scalar(c)
        return HomogeneousPoly(self.n_vars, self.degree, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            self._compatible(other)
            acc: dict[Monomial, Scalar] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = mono_mul(m1, m2)
                    acc[m] = acc.get(m, 0) + c1 * c2
            return HomogeneousPoly(self.n_vars, self.degree + other.degree, acc)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = HomogeneousPoly(self.n_vars, 0, {(0,) * self.n_vars: 1})
        for _ in range(e):
            out = out * self
        return out

    def derivative(self, j: int) -> HomogeneousPoly:
        return partial_derivative(self, j)

    def __call__(self, point: Sequence) -> Scalar:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.n_vars:
            raise ValueError(f"point needs {self.n_vars} coordinates")
        pt = [as_scalar(v) for v in point]
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x**e
            total += v
        return as_scalar(total)

    def variables_used(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def homogenize_to(self, n_vars: int) -> HomogeneousPoly:
        """Embed into a ring with more variables."""
        if n_vars < self.n_vars:
            raise ValueError("can only add variables")
        pad = (0,) * (n_vars - self.n_vars)
        return HomogeneousPoly(n_vars, self.degree, {m + pad: c for m, c in self._terms.items()})


def partial_derivative(f: HomogeneousPoly, j: int) -> HomogeneousPoly:
    if not 0 <= j < f.n_vars:
        raise ValueError(f"variable index {j} out of range for {f.n_vars} variables")
    if f.degree == 0:
        return HomogeneousPoly.zero(f.n_vars, 0)
    acc = {}
    for m, c in f.items():
        e = m[j]
        if e:
            acc[m[:j] + (e - 1,) + m[j + 1:]] = c * e
    return HomogeneousPoly(f.n_vars, f.degree - 1, acc)


def _coeff_str(c: Scalar) -> str:
    return str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def render(f: HomogeneousPoly) -> str:
    """Render in the grammar accepted by ``tjurina.cli.parse_poly``."""
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.items():
        mag = -c if c < 0 else c
        body = mono_str(m)
        if body == "1":
            term = _coeff_str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{_coeff_str(mag)}*{body}"
        if not out:
            out.append(f"-{term}" if c < 0 else term)
        else:
            out.append(f"- {term}" if c < 0 else f"+ {term}")
    return " ".join(out)


def euler_check(f: HomogeneousPoly) -> bool:
    """Return whether sum_j x_j * f_j equals deg(f) * f."""
    acc = HomogeneousPoly.zero(f.n_vars, f.degree)
    for j in range(f.n_vars):
        acc = acc + HomogeneousPoly.var(j, f.n_vars) * partial_derivative(f, j)
    # compare coefficients: for d = 0 the left side is the zero form of degree 1
    return acc.terms == f.scale(f.degree).terms
