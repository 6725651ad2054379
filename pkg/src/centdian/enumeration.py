"""Enumeration of budget-feasible subgraphs and their fast exact evaluation.

Internally every length is multiplied by one common integer ``scale`` so the
inner loops run on Python ints; results are converted back to Fractions.
"""

from __future__ import annotations

import heapq
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Optional

from .access import AccessParams
from .core import Instance, Subgraph, UNREACHABLE, network_distances, subgraph_cost
from .objectives import ObjectiveVector

DEFAULT_CAP = 24


class CapExceededError(RuntimeError):
    def __init__(self, n_edges: int, cap: int):
        super().__init__(
            f"instance has {n_edges} edges, above the enumeration cap of {cap}; "
            "raise the cap or force enumeration"
        )
        self.n_edges = n_edges
        self.cap = cap


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def _int_dijkstra(adj: dict[int, list[tuple[int, int]]], source: int, bound: float) -> dict[int, int]:
    dist = {source: 0}
    heap = [(0, source)]
    done = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        if d > bound:
            break
        for y, length in adj.get(x, ()):
            nd = d + length
            if nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


class Kernel:
    """Per-instance precomputation for evaluating many subgraphs quickly."""

    def __init__(self, inst: Instance, access: Optional[AccessParams] = None):
        self.inst = inst
        self.access = access
        idx = {nid: i for i, nid in enumerate(inst.node_ids)}
        self.n = len(idx)
        scale = _lcm([e.d.denominator for e in inst.edges] + [w.u.denominator for w in inst.pairs])
        if access is not None:
            scale *= access.beta.denominator
        self.scale = scale
        self.eu = [idx[e.u] for e in inst.edges]
        self.ev = [idx[e.v] for e in inst.edges]
        self.elen = [int(e.d * scale) for e in inst.edges]
        self.ps = [idx[w.s] for w in inst.pairs]
        self.pt = [idx[w.t] for w in inst.pairs]
        self.pu = [int(w.u * scale) for w in inst.pairs]
        gscale = _lcm(w.g.denominator for w in inst.pairs)
        self.gw = [int(w.g * gscale) for w in inst.pairs]
        self.gsum = sum(self.gw)
        by_origin: dict[int, list[int]] = {}
        for k, o in enumerate(self.ps):
            by_origin.setdefault(o, []).append(k)
        self.by_origin = list(by_origin.items())

        cscale = _lcm(
            [n.b.denominator for n in inst.nodes]
            + [e.c.denominator for e in inst.edges]
            + [inst.budget.denominator]
        )
        self.cost_scale = cscale
        self.ncost = [int(n.b * cscale) for n in inst.nodes]
        self.ecost = [int(e.c * cscale) for e in inst.edges]
        self.budget = int(inst.budget * cscale)  # exact: cscale clears the denominator

        if access is not None:
            self._prepare_access(idx)

    def _prepare_access(self, idx: dict) -> None:
        p = self.access
        inst = self.inst
        ends = sorted({w.s for w in inst.pairs} | {w.t for w in inst.pairs}, key=idx.get)
        rank = {nid: r for r, nid in enumerate(sorted(inst.node_ids))}
        self.rank = [rank[nid] for nid in inst.node_ids]
        kl = p.k * self.scale
        # walk[x][i]: scaled walking distance end x -> node i, None if unreachable
        self.walk: dict[int, list] = {}
        self.pen: dict[int, list] = {}
        self.allowed: dict[int, list[bool]] = {}
        for x in ends:
            dist = network_distances(inst, x)
            row = [None if dist[nid] == UNREACHABLE else int(dist[nid] * self.scale) for nid in inst.node_ids]
            pen = [None if v is None else p.beta.numerator * v // p.beta.denominator for v in row]
            test = pen if p.threshold_rule == "penalized" else row
            self.walk[idx[x]] = row
            self.pen[idx[x]] = pen
            self.allowed[idx[x]] = [v is not None and v <= kl for v in test]

    # -- cost ---------------------------------------------------------------

    def feasible_sets(self, root: Optional[int] = None) -> Iterator[tuple[int, ...]]:
        """Feasible edge sets, depth-first in canonical order.

        ``root=None`` yields everything; ``root=-1`` only the empty set;
        ``root=j`` only the sets whose smallest edge id is ``j``.
        """
        m = len(self.eu)
        eu, ev, ec, nc, budget = self.eu, self.ev, self.ecost, self.ncost, self.budget
        counts = [0] * self.n
        chosen: list[int] = []

        def step(j: int, cost: int) -> Optional[int]:
            u, v = eu[j], ev[j]
            new = cost + ec[j] + (nc[u] if counts[u] == 0 else 0) + (nc[v] if counts[v] == 0 else 0)
            return new if new <= budget else None

        def rec(start: int, cost: int) -> Iterator[tuple[int, ...]]:
            yield tuple(chosen)
            for j in range(start, m):
                new = step(j, cost)
                if new is None:
                    continue  # every superset is over budget as well
                counts[eu[j]] += 1
                counts[ev[j]] += 1
                chosen.append(j)
                yield from rec(j + 1, new)
                chosen.pop()
                counts[eu[j]] -= 1
                counts[ev[j]] -= 1

        if root is None:
            yield from rec(0, 0)
        elif root == -1:
            yield ()
        else:
            new = step(root, 0)
            if new is None:
                return
            counts[eu[root]] += 1
            counts[ev[root]] += 1
            chosen.append(root)
            yield from rec(root + 1, new)

    # -- lengths ------------------------------------------------------------

    def _adj(self, edges) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {}
        for k in edges:
            u, v, d = self.eu[k], self.ev[k], self.elen[k]
            adj.setdefault(u, []).append((v, d))
            adj.setdefault(v, []).append((u, d))
        return adj

    def scaled_lengths(self, edges) -> tuple[int, ...]:
        """Served lengths times ``scale``, in pair order."""
        if self.access is not None:
            return self._access_lengths(edges)
        adj = self._adj(edges)
        out = list(self.pu)
        pt, pu = self.pt, self.pu
        for origin, ks in self.by_origin:
            if origin not in adj:
                continue
            bound = max(pu[k] for k in ks)
            dist = _int_dijkstra(adj, origin, bound)
            for k in ks:
                d = dist.get(pt[k])
                if d is not None and d < pu[k]:
                    out[k] = d
        return tuple(out)

    def _points(self, stations, end: int) -> list[tuple[int, int]]:
        if end in stations:
            return [(end, 0)]
        walk, pen, ok = self.walk[end], self.pen[end], self.allowed[end]
        if self.access.access_rule == "nearest":
            reach = [i for i in stations if walk[i] is not None]
            if not reach:
                return []
            i = min(reach, key=lambda i: (walk[i], self.rank[i]))
            return [(i, pen[i])] if ok[i] else []
        return [(i, pen[i]) for i in stations if ok[i]]

    def _access_lengths(self, edges) -> tuple[int, ...]:
        adj = self._adj(edges)
        stations = set(adj)
        out = list(self.pu)
        rides: dict[int, dict[int, int]] = {}
        for k in range(len(out)):
            src = self._points(stations, self.ps[k])
            dst = self._points(stations, self.pt[k]) if src else []
            best = math.inf
            for a, pa in src:
                if a not in rides:
                    rides[a] = _int_dijkstra(adj, a, math.inf)
                ride = rides[a]
                for b, pb in dst:
                    if b in ride:
                        best = min(best, pa + ride[b] + pb)
            if best < out[k]:
                out[k] = best
        return tuple(out)

    def objectives(self, scaled: tuple[int, ...]) -> ObjectiveVector:
        center = max(scaled)
        total = sum(g * x for g, x in zip(self.gw, scaled))
        gw = self.gw
        best = min(range(len(scaled)), key=lambda k: (-gw[k] * scaled[k], -scaled[k], k))
        return ObjectiveVector(
            Fraction(center, self.scale),
            Fraction(total, self.gsum * self.scale),
            Fraction(scaled[best], self.scale),
            best,
        )

    def cost(self, edges) -> int:
        """Construction cost times ``cost_scale``."""
        nodes = {x for k in edges for x in (self.eu[k], self.ev[k])}
        return sum(self.ecost[k] for k in edges) + sum(self.ncost[i] for i in nodes)

    def evaluate(self, edges: tuple[int, ...]) -> "Evaluated":
        scaled = self.scaled_lengths(edges)
        return Evaluated(Subgraph(edges), scaled, self.scale, self.objectives(scaled), self.cost(edges))


@dataclass(frozen=True)
class Evaluated:
    """One feasible subgraph with its served lengths and objectives."""

    subgraph: Subgraph
    scaled: tuple[int, ...]
    scale: int
    objectives: ObjectiveVector
    cost: int = 0  # scaled by the kernel's cost_scale

    @cached_property
    def lengths(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.scale) for x in self.scaled)


def check_cap(inst: Instance, cap: int, force: bool) -> None:
    if len(inst.edges) > cap and not force:
        raise CapExceededError(len(inst.edges), cap)


def enumerate_feasible(inst: Instance, *, cap: int = DEFAULT_CAP, force: bool = False) -> Iterator[Subgraph]:
    """Every budget-feasible subgraph exactly once, in canonical order (empty first)."""
    check_cap(inst, cap, force)
    for edges in Kernel(inst).feasible_sets():
        yield Subgraph(edges)


def naive_feasible(inst: Instance) -> list[Subgraph]:
    """Unpruned 2^|E| enumeration; the oracle for :func:`enumerate_feasible`."""
    m = len(inst.edges)
    out = []
    for r in range(m + 1):
        for combo in itertools.combinations(range(m), r):
            s = Subgraph(combo)
            if subgraph_cost(inst, s) <= inst.budget:
                out.append(s)
    out.sort()
    return out


def _evaluate_root(args: tuple[Instance, Optional[AccessParams], int]) -> list[Evaluated]:
    inst, access, root = args
    kernel = Kernel(inst, access)
    return [kernel.evaluate(e) for e in kernel.feasible_sets(root)]


@lru_cache(maxsize=16)
def _evaluate_all(inst: Instance, access: Optional[AccessParams], workers: int) -> tuple[Evaluated, ...]:
    if workers <= 1:
        kernel = Kernel(inst, access)
        return tuple(kernel.evaluate(e) for e in kernel.feasible_sets())
    # partition by smallest edge id; concatenating in root order restores canonical order
    roots = [-1] + list(range(len(inst.edges)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_evaluate_root, [(inst, access, r) for r in roots])
        return tuple(rec for part in parts for rec in part)


def evaluate_feasible(
    inst: Instance,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> tuple[Evaluated, ...]:
    """All feasible subgraphs with served lengths and objectives, canonical order."""
    check_cap(inst, cap, force)
    return _evaluate_all(inst, access, max(1, workers))
