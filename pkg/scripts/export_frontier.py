"""Write the (F_c, F_m) frontier of an instance as CSV, ready for plotting."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from centdian import BUILTIN, builtin_instance
from centdian.core import load_instance
from centdian.pareto import export_frontier, frontier_csv


@dataclass(frozen=True)
class Config:
    instance: str = "example5_budget90"
    out: Optional[Path] = None
    workers: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="?", default=Config.instance, help=f"a JSON file or one of {', '.join(BUILTIN)}")
    ap.add_argument("--out", type=Path)
    ap.add_argument("--workers", type=int, default=1)
    cfg = Config(**vars(ap.parse_args()))
    inst = builtin_instance(cfg.instance) if cfg.instance in BUILTIN else load_instance(cfg.instance)
    fr = export_frontier(inst, workers=cfg.workers)
    text = frontier_csv(fr)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)
    nd = sum(r.nondominated for r in fr.rows)
    print(f"{fr.n_feasible} feasible subgraphs, {fr.n_points} points, {nd} nondominated", file=sys.stderr)


if __name__ == "__main__":
    main()
