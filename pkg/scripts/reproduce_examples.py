"""Recompute the worked examples shipped as builtin instances and print a table."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from centdian import builtin_instance
from centdian.access import AccessParams, access_served_length
from centdian.core import decimal_str
from centdian.pareto import compute_po2, export_frontier, max_centdian_intervals
from centdian.solver import Criterion, Kind, solve


@dataclass(frozen=True)
class Config:
    lam: str = "0.448"
    k: int = 35
    beta: int = 2
    as_json: bool = False


def _fmt(x):
    return "unreachable" if x == float("inf") else f"{x} ({decimal_str(x)})"


def run(cfg: Config) -> dict:
    out: dict = {}
    for name in ("example1", "example2", "example3", "example4", "example5"):
        inst = builtin_instance(name)
        rows = {}
        for kind in (Kind.MEDIAN, Kind.CENTER, Kind.LEX_CENTDIAN, Kind.GEN_CENTER, Kind.RESTRICTED_GEN_CENTER):
            sol = solve(inst, Criterion(kind))
            rows[kind.value] = {"subgraph": sol.subgraph.label(inst), "F_c": _fmt(sol.objectives.center), "F_m": _fmt(sol.objectives.median)}
        rows["po2"] = [[_fmt(c), _fmt(m)] for c, m in compute_po2(inst).points]
        out[name] = rows

    ex5 = builtin_instance("example5")
    sol = solve(ex5, Criterion(Kind.MAX_CENTDIAN, cfg.lam))
    out["example5"]["max_centdian"] = {"lambda": cfg.lam, "subgraph": sol.subgraph.label(ex5)}
    out["example5"]["intervals"] = {
        str(e.point[0]): [str(i) for i in e.intervals] for e in max_centdian_intervals(ex5).entries
    }
    fr = export_frontier(builtin_instance("example5_budget90"))
    out["example5_budget90"] = {
        "feasible": fr.n_feasible,
        "points": fr.n_points,
        "nondominated": [[_fmt(c), _fmt(m)] for c, m in (r.point for r in fr.rows if r.nondominated)],
    }

    metro = builtin_instance("metro")
    s = metro.subgraph([0, 1, 2, 3])
    p = AccessParams(cfg.k, cfg.beta)
    out["metro"] = [
        {"pair": [w.s, w.t], "distance": _fmt(r.distance), "length": _fmt(r.length), "covered": r.covered}
        for w in metro.pairs
        for r in [access_served_length(metro, s, w, p)]
    ]
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", default=Config.lam)
    ap.add_argument("--k", type=int, default=Config.k)
    ap.add_argument("--beta", type=int, default=Config.beta)
    ap.add_argument("--json", dest="as_json", action="store_true")
    cfg = Config(**vars(ap.parse_args()))
    result = run(cfg)
    if cfg.as_json:
        print(json.dumps(result, indent=2))
        return
    for name, body in result.items():
        print(f"== {name}")
        if isinstance(body, list):
            for row in body:
                print("  ", row)
            continue
        for key, val in body.items():
            print(f"  {key}: {val}")


if __name__ == "__main__":
    main()
