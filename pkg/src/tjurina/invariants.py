"""Global Tjurina number, defect table and theorem verdicts.

Every checker returns a :class:`Verdict`.  Hypotheses are evaluated exactly;
where a theorem's proof implies a computable side statement (a vanishing
``AR(f)_k``, a lower bound on ``mdr``), that statement is recomputed and a
failure raises :class:`~tjurina.errors.InvariantViolation` rather than being
reported as data.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from . import oracle, syzygy
from .errors import (
    BoundViolation,
    DegreeTooSmall,
    DimensionNotOne,
    InvariantViolation,
    NonIsolatedOrBug,
    ProofStepViolation,
    WrongDimension,
)
from .oracle import NodalConfiguration, SingularPoint
from .poly import HomogeneousPoly, render
from .syzygy import GradedDims


@dataclass(frozen=True)
class Verdict:
    holds: bool | None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "details": _plain(self.details)}


@dataclass(frozen=True)
class TjurinaBounds:
    r: int
    lower: int
    upper: int
    tau: int
    attains_lower: bool
    attains_upper: bool
    checked: bool


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, HomogeneousPoly):
        return render(x)
    if isinstance(x, syzygy.SyzygyVector):
        return [render(a) for a in x.components]
    return x


def _dims(f: HomogeneousPoly) -> tuple[int, int, int]:
    n, d = f.n_vars - 1, f.degree
    return n, d, n * (d - 2)


def global_tjurina(f: HomogeneousPoly, field: str = "exact") -> int:
    """tau(V) as the stable ER dimension, cross-checked by the Hilbert oracle."""
    syzygy.require_not_cone(f, field)
    _, _, top = _dims(f)
    e0 = syzygy.er_dim(f, top, field)
    e1 = syzygy.er_dim(f, top + 1, field)
    h = oracle.hilbert_tau(f, field=field)
    if not e0 == e1 == h:
        raise NonIsolatedOrBug("Tjurina routes disagree", {"er[n(d-2)]": e0, "er[n(d-2)+1]": e1, "hilbert": h})
    return e0


def defect_table(f: HomogeneousPoly, field: str = "exact", tau: int | None = None) -> dict[int, int]:
    """k -> defect_k(Sigma) for 0 <= k <= n(d-2)-1, read off ER by duality."""
    if tau is None:
        tau = global_tjurina(f, field)
    _, _, top = _dims(f)
    table = {}
    for m in range(top):
        v = syzygy.er_dim(f, top - 1 - m, field)
        if not 0 <= v <= tau:
            raise InvariantViolation(f"defect_{m} = {v} outside [0, tau={tau}]")
        table[m] = v
    return table


def versality_report(f: HomogeneousPoly, a: int, field: str = "exact") -> Verdict:
    """a-versality by the mder criterion and by vanishing of the dual defect."""
    _, _, top = _dims(f)
    if not 0 <= a <= top - 1:
        raise ValueError(f"a must lie in [0, {top - 1}]")
    m = syzygy.mder(f, field)
    by_mder = m is None or a < m
    defect_index = top - 1 - a
    defect = syzygy.er_dim(f, a, field)
    by_defect = defect == 0
    if by_mder != by_defect:
        raise InvariantViolation(f"versality criteria disagree at a={a}: mder={m}, defect_{defect_index}={defect}")
    return Verdict(by_mder, {"a": a, "mder": m, "monomial_degree": top - 1 - a, "defect_index": defect_index, "defect": defect})


def t_smoothness(f: HomogeneousPoly, field: str = "exact") -> Verdict:
    n, d, top = _dims(f)
    m = syzygy.mder(f, field)
    lhs = top - d - 1
    details: dict[str, Any] = {"lhs": lhs, "mder": m, "condition": "n(d-2)-d-1 < mder"}
    if n == 2:
        details["plane_form"] = f"d-5 = {d - 5} < mder"
    if m is None:
        details["note"] = "V is smooth"
        return Verdict(True, details)
    return Verdict(lhs < m, details)


def mder_tau_inequality(f: HomogeneousPoly, field: str = "exact", tau: int | None = None) -> Verdict:
    """mder(f) > n(d-2) - tau(V) for singular V."""
    if tau is None:
        tau = global_tjurina(f, field)
    _, _, top = _dims(f)
    m = syzygy.mder(f, field)
    if tau == 0:
        return Verdict(None, {"note": "V is smooth", "mder": m})
    holds = m is not None and m > top - tau
    if not holds:
        raise InvariantViolation(f"mder = {m} is not > n(d-2) - tau = {top - tau}")
    return Verdict(True, {"mder": m, "rhs": top - tau})


def topological_versality_witness(
    f: HomogeneousPoly,
    a: int,
    point: SingularPoint | Sequence,
    non_simple: bool = True,
    field: str = "exact",
) -> Verdict:
    """Evaluate the generator of a one-dimensional ER(f)_a at a singular point."""
    if isinstance(point, SingularPoint):
        p = SingularPoint.certify(f, point.coords, point.claims)
    else:
        p = SingularPoint.certify(f, point)
    e = syzygy.er_dim(f, a, field)
    if e != 1:
        raise DimensionNotOne(f"dim ER_{a} = {e}, expected 1")
    rho = syzygy.er_basis(f, a, field)[0]
    value = rho.evaluate(p.coords)
    # coset independence: Koszul syzygies vanish at singular points
    second = None
    for kappa in syzygy.koszul_elements(f, a):
        if any(kappa.evaluate(p.coords)):
            raise InvariantViolation("a Koszul syzygy does not vanish at a singular point")
        if second is None and not all(c.is_zero() for c in kappa.components):
            second = rho + kappa
    if second is not None and second.evaluate(p.coords) != value:
        raise InvariantViolation("witness value depends on the coset representative")
    nonzero = any(v != 0 for v in value)
    details = {"a": a, "point": list(p.coords), "rho": rho, "rho_at_point": list(value), "non_simple_claimed": non_simple}
    if nonzero and non_simple:
        details["conclusion"] = f"topologically {a}-versal"
        return Verdict(True, details)
    details["conclusion"] = "inconclusive"
    return Verdict(None, details)


def dpw_bounds(f: HomogeneousPoly, field: str = "exact", tau: int | None = None) -> TjurinaBounds:
    n, d, _ = _dims(f)
    if n < 2:
        raise WrongDimension("Tjurina bounds need n >= 2")
    syzygy.require_not_cone(f, field)
    r = syzygy.mdr(f, field)
    if tau is None:
        tau = global_tjurina(f, field)
    lower = (d - r - 1) * (d - 1) ** (n - 1)
    upper = (d - 1) ** n - r * (d - r - 1) * (d - 1) ** (n - 2)
    checked = tau > 0
    if checked and not lower <= tau <= upper:
        raise BoundViolation(f"tau = {tau} outside [{lower}, {upper}] for d={d}, n={n}, r={r}")
    return TjurinaBounds(r, lower, upper, tau, tau == lower, tau == upper, checked)


def is_free_curve(f: HomogeneousPoly, field: str = "exact", tau: int | None = None, reduced_claimed: bool = True) -> Verdict:
    n, d, _ = _dims(f)
    if n != 2:
        raise WrongDimension(f"freeness test is for plane curves, got n={n}")
    b = dpw_bounds(f, field, tau)
    return Verdict(b.tau == b.upper, {"tau": b.tau, "upper": b.upper, "r": b.r, "reduced_claimed": reduced_claimed})


def stability_hypothesis(f: HomogeneousPoly, field: str = "exact", tau: int | None = None) -> Verdict:
    n, d, _ = _dims(f)
    if n != 3:
        raise WrongDimension(f"stability check is for surfaces in P^3, got n={n}")
    d1 = (d - 1) // 3
    eps = d - 3 * d1
    threshold = (d - d1 - 1) * (d - 1) ** 2
    if tau is None:
        tau = global_tjurina(f, field)
    holds = tau < threshold
    details: dict[str, Any] = {"d_prime": d1, "epsilon": eps, "tau": tau, "threshold": threshold}
    if holds:
        van = syzygy.ar_dim(f, d1, field)
        if van != 0:
            raise ProofStepViolation(f"hypothesis holds but dim AR_{d1} = {van} != 0")
        details["ar_dim_at_d_prime"] = 0
        details["c1"] = 1 - eps
        details["conclusion"] = f"T<V>({d1 - 1}) is stable (rank 3, reflexive, c1 = {1 - eps})"
    return Verdict(holds, details)


def torelli_hypothesis(f: HomogeneousPoly, field: str = "exact", tau: int | None = None) -> Verdict:
    n, d, _ = _dims(f)
    if d < 4:
        raise DegreeTooSmall(f"Torelli check needs d >= 4, got d={d}")
    m = (d - 2) // 2
    threshold = comb(m + n - 1, n - 1)
    if tau is None:
        tau = global_tjurina(f, field)
    holds = tau < threshold
    details: dict[str, Any] = {"m": m, "tau": tau, "threshold": threshold}
    if holds:
        r = syzygy.mdr(f, field)
        if not r > d - 2:
            raise ProofStepViolation(f"hypothesis holds but mdr = {r} <= d-2 = {d - 2}")
        if not threshold < (d - 1) ** (n - 1):
            raise ProofStepViolation(f"binomial threshold {threshold} is not < (d-1)^(n-1)")
        details["mdr"] = r
        details["conclusion"] = "DK-Torelli, unless f is a Sebastiani-Thom sum"
    return Verdict(holds, details)


def defect_duality(f: HomogeneousPoly, nodes: NodalConfiguration, field: str = "exact") -> Verdict:
    """Compare er_dim(f, k) with the point-evaluation defect in degree n(d-2)-1-k."""
    _, _, top = _dims(f)
    rows = []
    for k in range(top):
        e = syzygy.er_dim(f, k, field)
        dfct = oracle.nodal_defect(nodes, top - 1 - k, field)
        rows.append({"k": k, "er": e, "nodal_defect": dfct})
        if e != dfct:
            raise InvariantViolation(f"ER/defect duality fails at k={k}: er={e}, defect={dfct}")
    return Verdict(True, {"rows": rows, "nodes": len(nodes.points)})


@dataclass
class InvariantsReport:
    polynomial: str
    n_vars: int
    d: int
    n: int
    field: str
    cone: bool
    mdr: int
    mder: int | None
    tau: int
    graded_dims: GradedDims
    defect_table: dict[int, int]
    bounds: TjurinaBounds | None
    verdicts: dict[str, Verdict]
    claims: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] | None = None

    def to_dict(self) -> dict:
        b = self.bounds
        return {
            "input": {"polynomial": self.polynomial, "n_vars": self.n_vars, "n": self.n, "d": self.d, "field": self.field, "claims": _plain(self.claims)},
            "invariants": {"cone": self.cone, "mdr": self.mdr, "mder": self.mder, "tau": self.tau},
            "tables": {
                "graded_dims": [{"k": k, "ar": a, "kr": c, "er": e} for k, a, c, e in self.graded_dims.rows],
                "defects": [{"k": k, "defect": v} for k, v in sorted(self.defect_table.items())],
            },
            "bounds": None
            if b is None
            else {"r": b.r, "lower": b.lower, "upper": b.upper, "attains_lower": b.attains_lower, "attains_upper": b.attains_upper, "checked": b.checked},
            "verdicts": {name: v.to_dict() for name, v in self.verdicts.items()},
            "timings": None if self.timings is None else {k: round(v, 6) for k, v in self.timings.items()},
        }


def full_report(
    f: HomogeneousPoly,
    field: str = "exact",
    cap: int | None = None,
    nodes: Sequence[Sequence] | None = None,
    witness: tuple[int, Sequence] | None = None,
    non_simple: bool = True,
    reduced_claimed: bool = True,
    timings: bool = False,
) -> InvariantsReport:
    clock: dict[str, float] = {}

    def timed(name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        clock[name] = clock.get(name, 0.0) + time.perf_counter() - t0
        return out

    n, d, top = _dims(f)
    syzygy.require_not_cone(f, field)
    dims = timed("graded_dims", syzygy.graded_dims, f, max(cap if cap is not None else 0, top + 1), field)
    r = timed("mdr", syzygy.mdr, f, field)
    m = timed("mder", syzygy.mder, f, field)
    tau = timed("tau", global_tjurina, f, field)
    defects = timed("defects", defect_table, f, field, tau)

    verdicts: dict[str, Verdict] = {}
    bounds = None
    if n >= 2:
        bounds = timed("bounds", dpw_bounds, f, field, tau)
        verdicts["tjurina_bounds"] = Verdict(True if bounds.checked else None, {"lower": bounds.lower, "upper": bounds.upper, "tau": tau, "r": r})
    verdicts["mdr_mder"] = _mdr_mder_verdict(r, m, d)
    verdicts["mder_tau_inequality"] = mder_tau_inequality(f, field, tau)
    verdicts["versality"] = Verdict(True, {"table": [{"a": a, "versal": versality_report(f, a, field).holds} for a in range(top)]})
    verdicts["t_smoothness"] = t_smoothness(f, field)
    if nodes is not None:
        conf = NodalConfiguration.for_poly(f, nodes)
        if len(conf.points) != tau:
            raise InvariantViolation(f"{len(conf.points)} nodes given but tau = {tau}")
        verdicts["defect_duality"] = timed("duality", defect_duality, f, conf, field)
    if n == 2:
        verdicts["free_curve"] = is_free_curve(f, field, tau, reduced_claimed)
    if n == 3:
        verdicts["stability"] = stability_hypothesis(f, field, tau)
    if d >= 4:
        verdicts["torelli"] = torelli_hypothesis(f, field, tau)
    if witness is not None:
        a, pt = witness
        verdicts["witness"] = topological_versality_witness(f, a, pt, non_simple, field)

    claims: dict[str, Any] = {"reduced": reduced_claimed}
    if nodes is not None:
        claims["nodes"] = [list(p) for p in nodes]
    if witness is not None:
        claims["non_simple_point"] = non_simple
    return InvariantsReport(
        polynomial=render(f),
        n_vars=f.n_vars,
        d=d,
        n=n,
        field=field,
        cone=False,
        mdr=r,
        mder=m,
        tau=tau,
        graded_dims=dims,
        defect_table=defects,
        bounds=bounds,
        verdicts=verdicts,
        claims=claims,
        timings=clock if timings else None,
    )


def _mdr_mder_verdict(r: int, m: int | None, d: int) -> Verdict:
    if m is None:
        return Verdict(None, {"mdr": r, "mder": None, "note": "ER vanishes through n(d-2)"})
    if r > m or (r < d - 1 and r != m):
        raise InvariantViolation(f"mdr = {r}, mder = {m} violate mdr <= mder (equality when mdr < d-1)")
    return Verdict(True, {"mdr": r, "mder": m})
