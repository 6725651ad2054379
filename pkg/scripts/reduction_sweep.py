"""Compare solver optima on reduced p-median/p-center instances with brute force."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from centdian.generate import random_pfacility
from centdian.reductions import brute_force_p_center, brute_force_p_median, p_center_to_instance, p_median_to_instance
from centdian.solver import Criterion, Kind, solve


@dataclass(frozen=True)
class Config:
    trials: int = 50
    seed: int = 0
    max_n: int = 8
    max_p: int = 3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for field, default in vars(Config()).items():
        ap.add_argument(f"--{field.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    mismatches = 0
    start = time.perf_counter()
    for trial in range(cfg.trials):
        inp = random_pfacility(rng, n=rng.randint(1, cfg.max_n), max_p=cfg.max_p)
        med = solve(p_median_to_instance(inp), Criterion(Kind.MEDIAN)).objectives.median * inp.n
        cen = solve(p_center_to_instance(inp), Criterion(Kind.CENTER)).objectives.center
        want = (brute_force_p_median(inp), brute_force_p_center(inp))
        ok = (med, cen) == want
        mismatches += not ok
        print(f"{trial:3d} n={inp.n} p={inp.p} median={med} center={cen} oracle={want[0]},{want[1]} {'ok' if ok else 'MISMATCH'}")
    print(f"{cfg.trials - mismatches}/{cfg.trials} agree in {time.perf_counter() - start:.1f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
