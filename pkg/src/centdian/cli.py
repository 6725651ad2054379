"""Command-line entry point. Every command prints JSON (or CSV for ``frontier``).

Exit codes: 0 success, 2 invalid input, 3 enumeration cap refused.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import BUILTIN, builtin_instance
from .access import AccessParams, access_served_length
from .core import (
    UNREACHABLE,
    Instance,
    InstanceError,
    Subgraph,
    as_rational,
    check_subgraph,
    decimal_str,
    dump_instance,
    load_instance,
)
from .enumeration import DEFAULT_CAP, CapExceededError, evaluate_feasible
from .objectives import ObjectiveVector, objectives_from_lengths
from .pareto import ParetoSet, compute_po, compute_po2, export_frontier, frontier_csv, lambda_intervals
from .reductions import load_pfacility, p_center_to_instance, p_median_to_instance
from .solver import Criterion, Domain, Kind, Solution, solve, solve_with_efficiency

EXIT_INVALID = 2
EXIT_CAP = 3


class UsageError(ValueError):
    pass


# -- JSON rendering ---------------------------------------------------------------


def rat(x) -> Any:
    if x == UNREACHABLE:
        return "unreachable"
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "dec": decimal_str(x)}


def subgraph_json(inst: Instance, s: Subgraph) -> dict:
    return {"edges": list(s.edges), "label": s.label(inst)}


def objectives_json(inst: Instance, v: ObjectiveVector) -> dict:
    w = inst.pairs[v.argmax_pair]
    return {
        "F_c": rat(v.center),
        "F_m": rat(v.median),
        "F_c_G": rat(v.weighted_center),
        "weighted_center_pair": [w.s, w.t],
    }


def solution_json(inst: Instance, sol: Solution) -> dict:
    return {
        "subgraph": subgraph_json(inst, sol.subgraph),
        "objectives": objectives_json(inst, sol.objectives),
        "value": rat(sol.value),
        "domain": sol.domain.value,
        "method": sol.method,
    }


def pareto_json(inst: Instance, ps: ParetoSet) -> list[dict]:
    out = []
    for e in ps.entries:
        row: dict[str, Any] = {
            "point": [rat(x) for x in e.point],
            "representatives": [subgraph_json(inst, s) for s in e.representatives],
        }
        if ps.kind == "PO2":
            row["intervals"] = [
                {"lo": rat(i.lo), "hi": rat(i.hi), "lo_closed": i.lo_closed, "hi_closed": i.hi_closed}
                for i in e.intervals
            ]
        out.append(row)
    return out


def digest(inst: Instance) -> dict:
    return {
        "nodes": len(inst.nodes),
        "edges": len(inst.edges),
        "pairs": len(inst.pairs),
        "budget": rat(inst.budget),
    }


# -- argument parsing ---------------------------------------------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _k_arg(text: str):
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return _rational_arg(text)


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--instance", default=d(None), help=f"instance JSON file, or builtin:NAME with NAME in {', '.join(BUILTIN)}")
    p.add_argument("--workers", type=int, default=d(1), help="processes for enumeration")
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="largest edge count enumerated without --force")
    p.add_argument("--force", action="store_true", default=d(False), help="enumerate above the cap")


def _model_flags(p: argparse.ArgumentParser, k_required: bool = False) -> None:
    g = p.add_argument_group("access model")
    g.add_argument("--k", type=_k_arg, required=k_required, help="walking threshold; enables the access model")
    g.add_argument("--beta", type=_rational_arg, default=Fraction(1), help="walking penalty (>= 1)")
    g.add_argument("--access-rule", choices=("best", "nearest"), default="best")
    g.add_argument("--threshold-rule", choices=("penalized", "raw"), default="penalized")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centdian", description="Exact budget-constrained network design.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        return p

    p = command("solve", "optimize one criterion")
    p.add_argument("--criterion", required=True, choices=[k.value.replace("_", "-") for k in Kind])
    p.add_argument("--lambda", dest="lam", type=_rational_arg)
    p.add_argument("--delta", type=_rational_arg, help="add the efficiency constraint F_m <= (1 + delta) * best F_m")
    p.add_argument("--unrestricted", action="store_true", help="minimize a generalized-center criterion over every feasible subgraph")
    p.add_argument("--method", choices=("auto", "enumerate", "bnb"), default="auto")
    _model_flags(p)

    p = command("frontier", "every distinct (F_c, F_m) point as CSV")
    _model_flags(p)

    p = command("pareto", "the PO or PO2 set")
    p.add_argument("which", choices=("po", "po2"))
    _model_flags(p)

    p = command("intervals", "lambda intervals of the maximum lambda-cent-dian")
    _model_flags(p)

    p = command("enumerate", "list every feasible subgraph with its objectives")
    p.add_argument("--count-only", action="store_true")
    _model_flags(p)

    p = command("reduce", "build an instance from a p-median or p-center input")
    p.add_argument("--input", required=True, help="JSON file with 'dist' and 'p'")
    p.add_argument("--kind", choices=("median", "center"), default="median")

    p = command("access", "evaluate one subgraph under the access model")
    p.add_argument("--subgraph", required=True, help="comma-separated edge ids or u-v endpoints")
    _model_flags(p, k_required=True)
    return parser


def _access(args) -> Optional[AccessParams]:
    if getattr(args, "k", None) is None:
        return None
    return AccessParams(args.k, args.beta, args.access_rule, args.threshold_rule)


def _instance(args) -> Instance:
    if args.instance is None:
        raise UsageError("--instance is required")
    if args.instance.startswith("builtin:"):
        try:
            return builtin_instance(args.instance.removeprefix("builtin:"))
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    try:
        return load_instance(args.instance)
    except OSError as exc:
        raise UsageError(f"cannot read instance: {exc}") from None


def parse_subgraph_spec(inst: Instance, spec: str) -> Subgraph:
    ids = []
    for tok in filter(None, (t.strip() for t in spec.split(","))):
        if "-" in tok:
            a, b = tok.split("-", 1)
            u, v = (_node_token(inst, x) for x in (a, b))
            ids.append(inst.edge_id(u, v))
        else:
            try:
                ids.append(int(tok))
            except ValueError:
                raise UsageError(f"bad edge token {tok!r}") from None
    s = Subgraph(tuple(ids))
    check_subgraph(inst, s)
    return s


def _node_token(inst: Instance, text: str):
    text = text.strip()
    if text in inst.node_ids:
        return text
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"unknown node {text!r}") from None


def _criterion(args) -> Criterion:
    kind = Kind(args.criterion.replace("-", "_"))
    domain = None
    if args.unrestricted:
        if kind not in (Kind.GEN_CENTER, Kind.WEIGHTED_GEN_CENTER, Kind.RESTRICTED_GEN_CENTER, Kind.RESTRICTED_CENTDIAN):
            raise UsageError(f"--unrestricted does not apply to {args.criterion}")
        domain = Domain.ALL
    return Criterion(kind, args.lam, domain)


# -- commands -----------------------------------------------------------------------


def _enum_kw(args) -> dict:
    return {"access": _access(args), "cap": args.cap, "force": args.force, "workers": args.workers}


def cmd_solve(args) -> tuple[dict, int]:
    inst = _instance(args)
    crit = _criterion(args)
    kw = _enum_kw(args)
    if args.delta is not None:
        if args.method == "bnb":
            raise UsageError("--delta needs full enumeration")
        sol = solve_with_efficiency(inst, crit, args.delta, **kw)
    else:
        sol = solve(inst, crit, method=args.method, **kw)
    return {"instance": digest(inst), "result": solution_json(inst, sol)}, sol.certificate


def cmd_pareto(args) -> tuple[dict, int]:
    inst = _instance(args)
    kw = _enum_kw(args)
    ps = compute_po(inst, **kw) if args.which == "po" else compute_po2(inst, **kw)
    n = len(evaluate_feasible(inst, access=kw["access"], cap=args.cap, force=args.force, workers=args.workers))
    return {"instance": digest(inst), "result": {"kind": ps.kind, "entries": pareto_json(inst, ps)}}, n


def cmd_intervals(args) -> tuple[dict, int]:
    inst = _instance(args)
    kw = _enum_kw(args)
    ps = lambda_intervals(compute_po2(inst, **kw))
    n = len(evaluate_feasible(inst, access=kw["access"], cap=args.cap, force=args.force, workers=args.workers))
    return {"instance": digest(inst), "result": {"kind": ps.kind, "entries": pareto_json(inst, ps)}}, n


def cmd_enumerate(args) -> tuple[dict, int]:
    inst = _instance(args)
    records = evaluate_feasible(inst, access=_access(args), cap=args.cap, force=args.force, workers=args.workers)
    result: dict[str, Any] = {"count": len(records)}
    if not args.count_only:
        result["subgraphs"] = [
            {**subgraph_json(inst, r.subgraph), "objectives": objectives_json(inst, r.objectives)} for r in records
        ]
    return {"instance": digest(inst), "result": result}, len(records)


def cmd_access(args) -> tuple[dict, int]:
    inst = _instance(args)
    s = parse_subgraph_spec(inst, args.subgraph)
    p = _access(args)
    rows, lengths = [], []
    for w in inst.pairs:
        served = access_served_length(inst, s, w, p)
        lengths.append(served.length)
        rows.append({
            "pair": [w.s, w.t],
            "distance": rat(served.distance),
            "length": rat(served.length),
            "covered": served.covered,
        })
    result = {
        "subgraph": subgraph_json(inst, s),
        "pairs": rows,
        "covered": [k for k, r in enumerate(rows) if r["covered"]],
        "objectives": objectives_json(inst, objectives_from_lengths(inst, lengths)),
    }
    return {"instance": digest(inst), "result": result}, 1


def _run_frontier(args) -> int:
    inst = _instance(args)
    fr = export_frontier(inst, **_enum_kw(args))
    sys.stdout.write(frontier_csv(fr))
    n_nd = sum(r.nondominated for r in fr.rows)
    print(f"feasible subgraphs: {fr.n_feasible}; distinct points: {fr.n_points}; nondominated: {n_nd}", file=sys.stderr)
    return 0


def _run_reduce(args) -> int:
    try:
        inp = load_pfacility(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    inst = p_median_to_instance(inp) if args.kind == "median" else p_center_to_instance(inp)
    sys.stdout.write(dump_instance(inst) + "\n")
    return 0


_REPORTING = {
    "solve": cmd_solve,
    "pareto": cmd_pareto,
    "intervals": cmd_intervals,
    "enumerate": cmd_enumerate,
    "access": cmd_access,
}


def _echo(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if isinstance(val, Fraction):
            val = str(val)
        elif isinstance(val, float):
            val = repr(val)
        out[key] = val
    return out


def run(args) -> int:
    if args.command == "frontier":
        return _run_frontier(args)
    if args.command == "reduce":
        return _run_reduce(args)
    start = time.perf_counter()
    body, certificate = _REPORTING[args.command](args)
    report = {
        "command": _echo(args),
        **body,
        "certificate": certificate,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    print(json.dumps(report, indent=2))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InstanceError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
