"""Seeded random instances for property tests and experiments."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Instance
from .reductions import PFacilityInput


@dataclass(frozen=True)
class RandomConfig:
    min_nodes: int = 3
    max_nodes: int = 6
    max_edges: int = 10
    max_pairs: int = 3
    max_length: int = 20
    max_cost: int = 10
    max_node_cost: int = 5
    max_demand: int = 9


def _pairs(rng: random.Random, nodes: list[int], cfg: RandomConfig, reach: dict) -> list[tuple]:
    candidates = [(s, t) for s, t in itertools.permutations(nodes, 2)]
    chosen = rng.sample(candidates, rng.randint(1, min(cfg.max_pairs, len(candidates))))
    out = []
    for s, t in chosen:
        # utility around the full-network distance so coverage is contested
        base = reach.get((s, t), cfg.max_length * len(nodes))
        u = rng.randint(max(1, base // 2), base + cfg.max_length)
        out.append((s, t, u, rng.randint(1, cfg.max_demand)))
    return out


def _all_pairs(nodes: list[int], edges: list[tuple]) -> dict:
    inf = float("inf")
    d = {(a, b): (0 if a == b else inf) for a in nodes for b in nodes}
    for u, v, _, length in edges:
        d[u, v] = d[v, u] = min(d[u, v], length)
    for k in nodes:
        for a in nodes:
            for b in nodes:
                if d[a, k] + d[k, b] < d[a, b]:
                    d[a, b] = d[a, k] + d[k, b]
    return {key: int(v) for key, v in d.items() if v != inf}


def _finish(rng: random.Random, nodes: list[int], edges: list[tuple], cfg: RandomConfig) -> Instance:
    node_costs = [(i, rng.randint(0, cfg.max_node_cost)) for i in nodes]
    pairs = _pairs(rng, nodes, cfg, _all_pairs(nodes, edges))
    total = sum(b for _, b in node_costs) + sum(c for _, _, c, _ in edges)
    budget = Fraction(rng.randint(0, total))
    return Instance.build(node_costs, edges, pairs, budget=budget)


def random_instance(rng: random.Random, cfg: RandomConfig = RandomConfig()) -> Instance:
    """A connected graph with positive lengths and at most ``cfg.max_edges`` edges."""
    n = rng.randint(cfg.min_nodes, cfg.max_nodes)
    nodes = list(range(1, n + 1))
    tree = _tree_edges(rng, nodes)
    extra = [e for e in itertools.combinations(nodes, 2) if e not in tree and e[::-1] not in tree]
    rng.shuffle(extra)
    ends = tree + extra[: rng.randint(0, max(0, cfg.max_edges - len(tree)))]
    rng.shuffle(ends)
    edges = [(u, v, rng.randint(0, cfg.max_cost), rng.randint(1, cfg.max_length)) for u, v in ends]
    return _finish(rng, nodes, edges, cfg)


def _tree_edges(rng: random.Random, nodes: list[int]) -> list[tuple[int, int]]:
    order = nodes[:]
    rng.shuffle(order)
    return [(rng.choice(order[:k]), order[k]) for k in range(1, len(order))]


def random_tree(rng: random.Random, cfg: RandomConfig = RandomConfig()) -> Instance:
    n = rng.randint(cfg.min_nodes, min(cfg.max_nodes, cfg.max_edges + 1))
    nodes = list(range(1, n + 1))
    edges = [(u, v, rng.randint(0, cfg.max_cost), rng.randint(1, cfg.max_length)) for u, v in _tree_edges(rng, nodes)]
    return _finish(rng, nodes, edges, cfg)


def random_pfacility(rng: random.Random, n: Optional[int] = None, max_p: int = 3, grid: int = 20) -> PFacilityInput:
    """Manhattan distances between random grid points (already metric)."""
    n = n if n is not None else rng.randint(1, 8)
    pts = [(rng.randint(0, grid), rng.randint(0, grid)) for _ in range(n)]
    dist = tuple(tuple(abs(a[0] - b[0]) + abs(a[1] - b[1]) for b in pts) for a in pts)
    return PFacilityInput(dist, rng.randint(1, min(max_p, n)))
