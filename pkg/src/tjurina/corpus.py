"""Built-in instances and the corpus-wide invariant suite."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import invariants, oracle, syzygy
from .errors import TjurinaError
from .parsing import parse_poly
from .poly import HomogeneousPoly, as_scalar, render


@dataclass(frozen=True)
class Instance:
    name: str
    expr: str
    n_vars: int | None = None
    # every singular point, all claimed to be ordinary nodes
    nodes: tuple[tuple, ...] | None = None
    # exponents of the local normal form sum y_i^{a_i} at the unique singular point
    brieskorn: tuple[int, ...] | None = None
    witness: tuple[int, tuple] | None = None
    # (target n) for suspension-invariance checks
    suspend_to: tuple[int, ...] = ()
    note: str = ""

    @cached_property
    def poly(self) -> HomogeneousPoly:
        return parse_poly(self.expr, self.n_vars)


def _lines_arrangement(coeffs: list[tuple[int, int, int]]) -> tuple[str, tuple[tuple, ...]]:
    """Product of linear forms plus their pairwise intersection points (all nodes)."""
    f = None
    for a, b, c in coeffs:
        lin = HomogeneousPoly(3, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
        f = lin if f is None else f * lin
    pts = []
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(coeffs, 2):
        p = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
        pts.append(_normalize_point(p))
    if len(set(pts)) != len(pts):
        raise ValueError("arrangement has a point of multiplicity > 2")
    return render(f), tuple(pts)


def _normalize_point(p):
    lead = next(c for c in p if c != 0)
    return tuple(as_scalar(Fraction(c, lead)) for c in p)


_TEN_LINES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2), (2, 1, -1), (1, 3, -2), (3, -2, 1), (1, -3, -1)]
_FOUR_LINES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def _build() -> dict[str, Instance]:
    out: list[Instance] = []
    for d in (5, 6, 7):
        out.append(
            Instance(
                f"exB-d{d}",
                f"x0^{d} + x1^{d - 1}*x2",
                brieskorn=(d, d - 1),
                witness=(1, (0, 0, 1)),
                suspend_to=(3,) if d == 5 else (),
                note="x0^d + x1^(d-1) x2: one non-simple point at (0:0:1)",
            )
        )
    for n in (2, 3):
        for d in (3, 4, 5):
            expr = " + ".join(f"x{i}^{d}" for i in range(n + 1))
            out.append(Instance(f"fermat-n{n}-d{d}", expr, suspend_to=(4,) if (n, d) == (2, 3) else (), note="smooth"))
    out.append(Instance("triangle", "x0*x1*x2", nodes=((1, 0, 0), (0, 1, 0), (0, 0, 1)), suspend_to=(3,), note="three lines, free"))
    out.append(Instance("triangle-susp3", "x0*x1*x2 + x3^3", note="suspension of the triangle: three A2 points"))
    out.append(Instance("exB-d5-susp3", "x0^5 + x1^4*x2 + x3^5", brieskorn=(5, 4, 5), note="suspension of exB-d5"))
    out.append(Instance("cusp-cubic", "x1^2*x2 - x0^3", brieskorn=(3, 2), note="cuspidal cubic"))
    out.append(Instance("nodal-cubic", "x0*x1*x2 + x0^3 + x1^3", nodes=((0, 0, 1),), suspend_to=(3,), note="one node"))
    out.append(Instance("nodal-sextic", "x0*x1*x2^4 + x0^6 + x1^6", nodes=((0, 0, 1),), note="one node, Torelli hypothesis holds"))
    out.append(
        Instance(
            "collinear-nodes-quartic",
            "x0^3*x2 - x0*x1^2*x2 + x2^4",
            nodes=((0, 1, 0), (1, 1, 0), (1, -1, 0)),
            note="line x2=0 times a smooth cubic: three collinear nodes",
        )
    )
    expr4, pts4 = _lines_arrangement(_FOUR_LINES)
    out.append(Instance("four-lines", expr4, nodes=pts4, note="generic arrangement of four lines"))
    expr10, pts10 = _lines_arrangement(_TEN_LINES)
    out.append(Instance("ten-lines", expr10, nodes=pts10, note="generic arrangement of ten lines: 45 nodes, d=10"))
    out.append(
        Instance(
            "quartic-node-surface",
            "x3^2*x0^2 + x3^2*x1^2 + x3^2*x2^2 + x0^4 + x1^4 + x2^4",
            nodes=((0, 0, 0, 1),),
            note="quartic surface with one node: stability hypothesis holds",
        )
    )
    out.append(
        Instance(
            "sextic-surface",
            "x3^4*x0^2 + x3^4*x1^2 + x3^4*x2^2 + x0^6 + x1^6 + x2^6",
            note="sextic surface with isolated singularities (scale check)",
        )
    )
    return {i.name: i for i in out}


CORPUS: dict[str, Instance] = _build()

# instances excluded from the quick corpus run (tests mark them slow)
HEAVY = {"sextic-surface"}


def corpus(include_heavy: bool = False) -> list[Instance]:
    return [i for i in CORPUS.values() if include_heavy or i.name not in HEAVY]


def get(name: str) -> Instance:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus instance {name!r}; try 'tjurina corpus list'") from None


@dataclass
class CheckResult:
    instance: str
    check: str
    ok: bool
    detail: str = ""


@dataclass
class InstanceResult:
    instance: Instance
    checks: list[CheckResult] = field(default_factory=list)
    report: invariants.InvariantsReport | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def check_instance(inst: Instance, field: str = "exact") -> InstanceResult:
    """Run the full report plus every cross-check that applies to the instance."""
    f = inst.poly
    res = InstanceResult(inst)
    t0 = time.perf_counter()

    def record(name, fn):
        try:
            out = fn()
        except TjurinaError as exc:
            res.checks.append(CheckResult(inst.name, name, False, f"{type(exc).__name__}: {exc}"))
            return None
        ok, detail = out
        res.checks.append(CheckResult(inst.name, name, bool(ok), detail))
        return out

    def report():
        res.report = invariants.full_report(f, field, nodes=inst.nodes, witness=inst.witness)
        return True, f"mdr={res.report.mdr} mder={res.report.mder} tau={res.report.tau}"

    record("report", report)
    if res.report is None:
        res.seconds = time.perf_counter() - t0
        return res
    rep = res.report
    n, d, top = rep.n, rep.d, rep.n * (rep.d - 2)

    def triple():
        e0, e1 = syzygy.er_dim(f, top, field), syzygy.er_dim(f, top + 1, field)
        h = oracle.hilbert_tau(f, field=field)
        vals = [e0, e1, h]
        if inst.brieskorn:
            vals.append(oracle.brieskorn_tau(inst.brieskorn))
        return len(set(vals)) == 1, f"er[n(d-2)], er[n(d-2)+1], hilbert{', brieskorn' if inst.brieskorn else ''} = {vals}"

    record("tau_agreement", triple)

    if rep.tau > 0:
        b = rep.bounds
        record("tjurina_bounds", lambda: (b.lower <= rep.tau <= b.upper, f"{b.lower} <= {rep.tau} <= {b.upper}"))
        record("mder_tau_inequality", lambda: (rep.mder is not None and rep.mder > top - rep.tau, f"mder={rep.mder} > {top - rep.tau}"))

        def versality():
            bad = []
            for a in range(top):
                by_mder = rep.mder is None or a < rep.mder
                by_defect = rep.defect_table[top - 1 - a] == 0
                if by_mder != by_defect:
                    bad.append(a)
            return not bad, f"{top} values of a, disagreements at {bad}"

        record("versality_agreement", versality)

    if inst.nodes is not None:
        conf = oracle.NodalConfiguration.for_poly(f, inst.nodes)

        def duality():
            bad = [k for k in range(top) if syzygy.er_dim(f, k, field) != oracle.nodal_defect(conf, top - 1 - k, field)]
            return not bad and len(inst.nodes) == rep.tau, f"{len(inst.nodes)} nodes, tau={rep.tau}, mismatches at k={bad}"

        record("defect_duality", duality)

    for target in inst.suspend_to:
        g = oracle.suspend(f, target)
        record(f"suspension_n{target}", lambda g=g: (syzygy.mdr(g, field) == rep.mdr, f"mdr({render(g)}) = {syzygy.mdr(g, field)} vs {rep.mdr}"))

    for key in ("stability", "torelli"):
        v = rep.verdicts.get(key)
        if v is not None:
            res.checks.append(CheckResult(inst.name, key, True, f"hypothesis {'holds' if v.holds else 'fails'}"))

    res.seconds = time.perf_counter() - t0
    return res


def run_corpus(field: str = "exact", include_heavy: bool = False, names: list[str] | None = None) -> list[InstanceResult]:
    insts = [get(n) for n in names] if names else corpus(include_heavy)
    return [check_instance(i, field) for i in insts]
