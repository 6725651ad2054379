"""Pedestrian access to a built network.

Riders may walk (in the full underlying network) from an origin outside the
built subgraph to a station, ride, and walk from a station to the destination.
Walking legs are multiplied by a penalty ``beta`` and must pass a walking
threshold ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NamedTuple, Union

from .core import (
    UNREACHABLE,
    Instance,
    Length,
    NodeId,
    ODPair,
    Subgraph,
    adjacency,
    check_subgraph,
    dijkstra,
    network_distances,
)
from .objectives import ObjectiveVector, objectives_from_lengths

AccessRule = Literal["best", "nearest"]
ThresholdRule = Literal["penalized", "raw"]


@dataclass(frozen=True)
class AccessParams:
    """Walking threshold ``k``, penalty ``beta`` and the two rule switches.

    ``threshold_rule="penalized"`` tests ``beta * walk <= k``; ``"raw"`` tests
    ``walk <= k``. ``access_rule="best"`` minimizes over every station passing
    the threshold; ``"nearest"`` only considers the closest station (ties by
    node id).
    """

    k: Union[Fraction, float]
    beta: Fraction = Fraction(1)
    access_rule: AccessRule = "best"
    threshold_rule: ThresholdRule = "penalized"

    def __post_init__(self) -> None:
        if not isinstance(self.k, float):
            object.__setattr__(self, "k", Fraction(self.k))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.beta < 1:
            raise ValueError(f"beta must be >= 1, got {self.beta}")
        if self.access_rule not in ("best", "nearest"):
            raise ValueError(f"unknown access rule {self.access_rule!r}")
        if self.threshold_rule not in ("penalized", "raw"):
            raise ValueError(f"unknown threshold rule {self.threshold_rule!r}")

    def walk_ok(self, walk: Length) -> bool:
        if self.threshold_rule == "penalized":
            return self.beta * walk <= self.k
        return walk <= self.k


def access_points(
    stations: frozenset[NodeId], end: NodeId, walk: dict[NodeId, Length], p: AccessParams
) -> list[tuple[NodeId, Length]]:
    """Stations usable from ``end`` with their (unpenalized) walking distance."""
    if end in stations:
        return [(end, Fraction(0))]
    if p.access_rule == "nearest":
        reachable = [i for i in stations if walk[i] != UNREACHABLE]
        if not reachable:
            return []
        i = min(reachable, key=lambda i: (walk[i], i))
        return [(i, walk[i])] if p.walk_ok(walk[i]) else []
    return sorted((i, walk[i]) for i in stations if walk[i] != UNREACHABLE and p.walk_ok(walk[i]))


def extended_distance(inst: Instance, s: Subgraph, w: ODPair, p: AccessParams) -> Length:
    """Walk + ride + walk distance of pair ``w`` through subgraph ``s``."""
    check_subgraph(inst, s)
    stations = s.node_set(inst)
    src = access_points(stations, w.s, network_distances(inst, w.s), p)
    dst = access_points(stations, w.t, network_distances(inst, w.t), p)
    if not src or not dst:
        return UNREACHABLE
    adj = adjacency(inst, s.edges)
    best: Length = UNREACHABLE
    for a, wa in src:
        ride = dijkstra(adj, a)
        for b, wb in dst:
            if b not in ride:
                continue
            total = p.beta * wa + ride[b] + p.beta * wb
            if total < best:
                best = Fraction(total)
    return best


class Served(NamedTuple):
    distance: Length
    length: Fraction
    covered: bool


def access_served_length(inst: Instance, s: Subgraph, w: ODPair, p: AccessParams) -> Served:
    d = extended_distance(inst, s, w, p)
    covered = d <= w.u
    return Served(d, Fraction(d) if covered else w.u, covered)


def eval_access_objectives(inst: Instance, s: Subgraph, p: AccessParams) -> ObjectiveVector:
    lengths = [access_served_length(inst, s, w, p).length for w in inst.pairs]
    return objectives_from_lengths(inst, lengths)
