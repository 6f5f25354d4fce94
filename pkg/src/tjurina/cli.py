"""Command line interface.

Exit codes::

    0   success
    1   other tjurina error
    2   usage error (argparse)
    10  ParseError
    11  NotHomogeneous
    12  ConeInput
    13  NonIsolatedOrBug (including NoStabilization)
    14  InvariantViolation (bound or proof-step failure), or a failed corpus check
    15  UnsupportedInput (wrong n, d too small, point not singular, dim ER_a != 1)

Structured output (``--format json``) is deterministic: keys appear in a
fixed order and timings are omitted unless ``--timings`` is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import corpus as corpus_mod
from . import invariants, linalg, syzygy
from .errors import InvariantViolation, ParseError, TjurinaError
from .invariants import Verdict, _plain
from .parsing import parse_poly
from .poly import HomogeneousPoly, as_scalar, render


def parse_point(text: str) -> tuple:
    try:
        return tuple(as_scalar(c) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from None


class _Job:
    """Resolved polynomial input plus instance claims."""

    def __init__(self, args):
        self.instance = None
        if args.instance:
            try:
                self.instance = corpus_mod.get(args.instance)
            except KeyError as exc:
                raise ParseError(str(exc.args[0])) from None
            text = self.instance.expr
            nvars = args.nvars or self.instance.n_vars
        elif args.file:
            text = Path(args.file).read_text(encoding="utf-8").strip()
            nvars = args.nvars
        else:
            text = args.expr
            nvars = args.nvars
        self.poly: HomogeneousPoly = parse_poly(text, nvars)
        self.field: str = args.field

    def header(self) -> dict[str, Any]:
        f = self.poly
        out = {"polynomial": render(f), "n_vars": f.n_vars, "n": f.n_vars - 1, "d": f.degree, "field": self.field}
        if self.instance is not None:
            out["instance"] = self.instance.name
        return out


def _emit(obj: dict, fmt: str, table: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(table.rstrip("\n") + "\n")


def _holds(v: bool | None) -> str:
    return {True: "holds", False: "fails", None: "n/a"}[v]


def _kv(rows: Sequence[tuple[str, Any]]) -> str:
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{w}}  {v}" for k, v in rows)


def _verdict_table(title: str, v: Verdict) -> str:
    rows = [(title, _holds(v.holds))]
    for k, x in _plain(v.details).items():
        rows.append((f"  {k}", x))
    return _kv(rows)


def _simple(job: _Job, name: str, v: Verdict) -> tuple[dict, str]:
    obj = {"input": job.header(), "verdicts": {name: v.to_dict()}}
    return obj, _kv([(k, v) for k, v in job.header().items()]) + "\n\n" + _verdict_table(name, v)


# ---------------------------------------------------------------- commands


def cmd_report(args) -> int:
    job = _Job(args)
    nodes = [parse_point(p) for p in args.node] or None
    witness = None
    if args.a is not None and args.point:
        witness = (args.a, parse_point(args.point))
    inst = job.instance
    if inst is not None:
        nodes = nodes or (list(inst.nodes) if inst.nodes else None)
        witness = witness or inst.witness
    rep = invariants.full_report(job.poly, job.field, args.cap, nodes=nodes, witness=witness, non_simple=not args.simple, timings=args.timings)
    obj = rep.to_dict()
    if inst is not None:
        obj["input"]["instance"] = inst.name
    _emit(obj, args.format, _report_table(obj))
    return 0


def _report_table(obj: dict) -> str:
    inp, inv = obj["input"], obj["invariants"]
    lines = [
        _kv(
            [
                ("polynomial", inp["polynomial"]),
                ("n", inp["n"]),
                ("d", inp["d"]),
                ("field", inp["field"]),
                ("mdr", inv["mdr"]),
                ("mder", "none (ER vanishes through n(d-2))" if inv["mder"] is None else inv["mder"]),
                ("tau", inv["tau"]),
            ]
        )
    ]
    b = obj["bounds"]
    if b is not None:
        att = [s for s, on in (("lower", b["attains_lower"]), ("upper", b["attains_upper"])) if on]
        lines.append(_kv([("bounds", f"{b['lower']}..{b['upper']}" + (f" (attains {', '.join(att)})" if att else ""))]))
    lines.append("")
    lines.append(f"{'k':>3} {'AR':>6} {'KR':>6} {'ER':>6}")
    for r in obj["tables"]["graded_dims"]:
        lines.append(f"{r['k']:>3} {r['ar']:>6} {r['kr']:>6} {r['er']:>6}")
    lines.append("")
    defects = obj["tables"]["defects"]
    if defects:
        lines.append("defects  " + " ".join(f"{r['k']}:{r['defect']}" for r in defects))
        lines.append("")
    for name, v in obj["verdicts"].items():
        if name == "versality":
            versal = [r["a"] for r in v["details"]["table"] if r["versal"]]
            lines.append(_kv([("versality", f"a-versal for a in {versal}" if versal else "a-versal for no a in range")]))
            continue
        lines.append(_verdict_table(name, Verdict(v["holds"], v["details"])))
    if obj["timings"] is not None:
        lines.append("")
        lines.append(_kv([(f"time {k}", f"{v:.3f}s") for k, v in obj["timings"].items()]))
    return "\n".join(lines)


def cmd_witness(args) -> int:
    job = _Job(args)
    if args.a is None or not args.point:
        raise ParseError("witness needs --a and --point")
    v = invariants.topological_versality_witness(job.poly, args.a, parse_point(args.point), not args.simple, job.field)
    obj, table = _simple(job, "witness", v)
    _emit(obj, args.format, table)
    return 0


def cmd_versality(args) -> int:
    job = _Job(args)
    f = job.poly
    syzygy.require_not_cone(f, job.field)
    top = (f.n_vars - 1) * (f.degree - 2)
    values = [args.a] if args.a is not None else list(range(top))
    rows = [invariants.versality_report(f, a, job.field) for a in values]
    ts = invariants.t_smoothness(f, job.field)
    obj = {"input": job.header(), "verdicts": {"versality": {"table": [v.to_dict()["details"] | {"versal": v.holds} for v in rows]}, "t_smoothness": ts.to_dict()}}
    lines = [f"{'a':>3} {'versal':>7} {'defect_index':>13} {'defect':>7}"]
    for v in rows:
        dd = v.details
        lines.append(f"{dd['a']:>3} {str(v.holds):>7} {dd['defect_index']:>13} {dd['defect']:>7}")
    table = _kv([(k, x) for k, x in job.header().items()]) + "\n\n" + "\n".join(lines) + "\n\n" + _verdict_table("t_smoothness", ts)
    _emit(obj, args.format, table)
    return 0


def cmd_bounds(args) -> int:
    job = _Job(args)
    b = invariants.dpw_bounds(job.poly, job.field)
    v = Verdict(True if b.checked else None, {"r": b.r, "lower": b.lower, "upper": b.upper, "tau": b.tau, "attains_lower": b.attains_lower, "attains_upper": b.attains_upper})
    obj, table = _simple(job, "tjurina_bounds", v)
    _emit(obj, args.format, table)
    return 0


def cmd_free(args) -> int:
    job = _Job(args)
    obj, table = _simple(job, "free_curve", invariants.is_free_curve(job.poly, job.field))
    _emit(obj, args.format, table)
    return 0


def cmd_stability(args) -> int:
    job = _Job(args)
    syzygy.require_not_cone(job.poly, job.field)
    obj, table = _simple(job, "stability", invariants.stability_hypothesis(job.poly, job.field))
    _emit(obj, args.format, table)
    return 0


def cmd_torelli(args) -> int:
    job = _Job(args)
    syzygy.require_not_cone(job.poly, job.field)
    obj, table = _simple(job, "torelli", invariants.torelli_hypothesis(job.poly, job.field))
    _emit(obj, args.format, table)
    return 0


def cmd_dims(args) -> int:
    job = _Job(args)
    g = syzygy.graded_dims(job.poly, args.cap, job.field)
    obj = {"input": job.header(), "tables": {"graded_dims": [{"k": k, "ar": a, "kr": c, "er": e} for k, a, c, e in g.rows]}}
    lines = [f"{'k':>3} {'AR':>6} {'KR':>6} {'ER':>6}"] + [f"{k:>3} {a:>6} {c:>6} {e:>6}" for k, a, c, e in g.rows]
    _emit(obj, args.format, "\n".join(lines))
    return 0


def cmd_corpus(args) -> int:
    if args.action == "list":
        insts = corpus_mod.corpus(include_heavy=True)
        obj = {"instances": [{"name": i.name, "polynomial": i.expr, "heavy": i.name in corpus_mod.HEAVY, "note": i.note} for i in insts]}
        w = max(len(i.name) for i in insts)
        table = "\n".join(f"{i.name:<{w}}  {i.expr}" + ("  [heavy]" if i.name in corpus_mod.HEAVY else "") for i in insts)
        _emit(obj, args.format, table)
        return 0
    for name in args.names:
        try:
            corpus_mod.get(name)
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from None
    results = corpus_mod.run_corpus(args.field, include_heavy=args.heavy, names=args.names or None)
    ok = all(r.ok for r in results)
    obj: dict[str, Any] = {
        "field": args.field,
        "ok": ok,
        "instances": [
            {
                "name": r.instance.name,
                "ok": r.ok,
                "checks": [{"check": c.check, "ok": c.ok, "detail": c.detail} for c in r.checks],
                **({"seconds": round(r.seconds, 6)} if args.timings else {}),
            }
            for r in results
        ],
    }
    lines = []
    for r in results:
        status = "ok" if r.ok else "FAIL"
        extra = f" {r.seconds:.2f}s" if args.timings else ""
        lines.append(f"{status:<4} {r.instance.name}{extra}")
        for c in r.checks:
            if not c.ok or args.verbose:
                lines.append(f"     {'ok' if c.ok else 'FAIL'} {c.check}: {c.detail}")
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} instances passed")
    _emit(obj, args.format, "\n".join(lines))
    return 0 if ok else InvariantViolation.exit_code


# ---------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser, poly: bool = True):
    if poly:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("expr", nargs="?", help="polynomial, e.g. 'x0^5 + x1^4*x2'")
        src.add_argument("--file", help="file holding one polynomial expression (UTF-8)")
        src.add_argument("--instance", help="name of a built-in corpus instance")
        p.add_argument("--nvars", type=int, help="number of variables (default: 1 + largest index used)")
    p.add_argument("--field", choices=linalg.FIELDS, default="exact", help="exact rational elimination, or multi-modular with exact certificate")
    p.add_argument("--format", choices=("table", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tjurina", description="Jacobian syzygies, Tjurina numbers and versality checks for projective hypersurfaces.")
    parser.add_argument("--log-level", default="WARNING", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="full invariants report")
    _common(p)
    p.add_argument("--cap", type=int, help="compute graded dimensions up to this degree")
    p.add_argument("--node", action="append", default=[], help="claimed node, e.g. 1,0,0 (repeatable)")
    p.add_argument("--a", type=int, help="degree for the versality witness (with --point)")
    p.add_argument("--point", help="singular point for the witness")
    p.add_argument("--simple", action="store_true", help="the witness point is a simple singularity")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (output is then not reproducible)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("witness", help="evaluate the ER_a generator at a singular point")
    _common(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--point", required=True, help="comma-separated exact coordinates, e.g. 0,0,1 or 1/2,1,0")
    p.add_argument("--simple", action="store_true", help="the point is a simple singularity")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("versality", help="a-versality table and T-smoothness")
    _common(p)
    p.add_argument("--a", type=int)
    p.set_defaults(func=cmd_versality)

    for name, fn, helptext in (
        ("bounds", cmd_bounds, "lower and upper Tjurina bounds in terms of mdr"),
        ("free", cmd_free, "freeness test for a plane curve"),
        ("stability", cmd_stability, "stability hypothesis for a surface in P^3"),
        ("torelli", cmd_torelli, "numerical Torelli hypothesis"),
    ):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("dims", help="graded dimensions of AR, KR and ER")
    _common(p)
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("corpus", help="built-in instances")
    p.add_argument("action", choices=("run", "list"))
    p.add_argument("names", nargs="*", help="instances to run (default: all light ones)")
    _common(p, poly=False)
    p.add_argument("--heavy", action="store_true", help="include the slow instances")
    p.add_argument("--timings", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    import logging

    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TjurinaError as exc:
        print(f"tjurina: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"tjurina: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
