"""p-median and p-center inputs turned into network-design instances, with brute-force oracles.

The reduced network has one node per demand point plus a sink ``t``. Linking a
point to ``t`` (cost 1, length 0) opens it as a facility; the complete layer of
zero-cost edges between points carries the metric distances. With budget ``p``
a subnetwork serves each point at its distance to the nearest opened facility.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import Instance, InstanceError, SchemaError, as_rational

BRUTE_FORCE_LIMIT = 12


def metric_closure(dist: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """All-pairs shortest paths (Floyd-Warshall)."""
    n = len(dist)
    d = [list(row) for row in dist]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return tuple(tuple(row) for row in d)


@dataclass(frozen=True)
class PFacilityInput:
    """Symmetric distance matrix over demand points and a facility count.

    ``dist`` is replaced by its metric closure on construction.
    """

    dist: tuple[tuple[Fraction, ...], ...]
    p: int

    def __post_init__(self) -> None:
        try:
            rows = tuple(tuple(as_rational(x) for x in row) for row in self.dist)
        except (TypeError, ValueError) as exc:
            raise InstanceError(f"distance matrix: {exc}") from None
        n = len(rows)
        if n == 0:
            raise InstanceError("distance matrix is empty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InstanceError(f"distance matrix is not square (row {i} has {len(row)} entries, expected {n})")
            if row[i] != 0:
                raise InstanceError(f"diagonal entry d[{i}][{i}] = {row[i]} is not zero")
            for j, x in enumerate(row):
                if x < 0:
                    raise InstanceError(f"negative distance d[{i}][{j}] = {x}")
                if x != rows[j][i]:
                    raise InstanceError(f"distance matrix is not symmetric at ({i}, {j})")
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InstanceError(f"p must be an integer, got {self.p!r}")
        if not 1 <= self.p <= n:
            raise InstanceError(f"p must satisfy 1 <= p <= {n}, got {self.p}")
        object.__setattr__(self, "dist", metric_closure(rows))

    @property
    def n(self) -> int:
        return len(self.dist)

    @classmethod
    def from_points(cls, coords: Sequence, p: int) -> "PFacilityInput":
        """Points on a line, distance ``|x - y|``."""
        xs = [as_rational(x) for x in coords]
        return cls(tuple(tuple(abs(a - b) for b in xs) for a in xs), p)


def parse_pfacility(text: str) -> PFacilityInput:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"dist", "p"}:
        raise SchemaError("p-facility document must be an object with exactly the keys 'dist' and 'p'")
    if not isinstance(doc["dist"], list) or not all(isinstance(r, list) for r in doc["dist"]):
        raise SchemaError("'dist' must be a list of lists")
    return PFacilityInput(tuple(tuple(r) for r in doc["dist"]), doc["p"])


def load_pfacility(path) -> PFacilityInput:
    return parse_pfacility(Path(path).read_text())


def big_utility(inp: PFacilityInput) -> Fraction:
    """A utility no served length in the reduced network can reach."""
    return 1 + 2 * inp.n * max(max(row) for row in inp.dist)


def _reduce(inp: PFacilityInput) -> Instance:
    n = inp.n
    t = n
    u = big_utility(inp)
    nodes = [(i, 0) for i in range(n + 1)]
    # facility links first: branch and bound decides them before the free layer
    edges = [(i, t, 1, 0) for i in range(n)]
    edges += [(i, j, 0, inp.dist[i][j]) for i, j in itertools.combinations(range(n), 2)]
    pairs = [(i, t, u, 1) for i in range(n)]
    return Instance.build(nodes, edges, pairs, budget=inp.p)


def p_median_to_instance(inp: PFacilityInput) -> Instance:
    return _reduce(inp)


def p_center_to_instance(inp: PFacilityInput) -> Instance:
    # same construction; only the objective read off differs
    return _reduce(inp)


def _check_limit(inp: PFacilityInput) -> None:
    if inp.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} points, got {inp.n}")


def _assignments(inp: PFacilityInput):
    rng = range(inp.n)
    for opened in itertools.combinations(rng, inp.p):
        yield [min(inp.dist[i][j] for j in opened) for i in rng]


def brute_force_p_median(inp: PFacilityInput) -> Fraction:
    _check_limit(inp)
    return min(sum(a, Fraction(0)) for a in _assignments(inp))


def brute_force_p_center(inp: PFacilityInput) -> Fraction:
    _check_limit(inp)
    return min(max(a) for a in _assignments(inp))


def p_median_decision(inp: PFacilityInput, threshold) -> bool:
    """Is there a p-subset with total assignment cost at most ``threshold``?"""
    return brute_force_p_median(inp) <= as_rational(threshold)


def p_center_decision(inp: PFacilityInput, threshold) -> bool:
    return brute_force_p_center(inp) <= as_rational(threshold)
