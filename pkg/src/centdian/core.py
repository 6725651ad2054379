"""Instances, subgraphs and the shortest-path primitives everything else builds on.

All numbers are :class:`fractions.Fraction`. Edge ids are positions in
``Instance.edges``; a :class:`Subgraph` is identified by its sorted edge ids and
its node set is the set of endpoints of those edges.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Union

UNREACHABLE = math.inf
Length = Union[Fraction, float]  # float only ever holds UNREACHABLE

NodeId = Union[int, str]


class InstanceError(ValueError):
    """Base class for anything wrong with an instance document or object."""


class SchemaError(InstanceError):
    pass


class DuplicateIdError(InstanceError):
    pass


class UnknownIdError(InstanceError):
    pass


class SelfLoopError(InstanceError):
    pass


class SameEndpointsError(InstanceError):
    pass


class NegativeValueError(InstanceError):
    pass


class NonPositiveValueError(InstanceError):
    pass


class ZeroDemandError(InstanceError):
    pass


def as_rational(x: Any, what: str = "value") -> Fraction:
    """Exact conversion of ints, Fractions and numeral strings ("0.448", "7/3")."""
    if isinstance(x, bool):
        raise SchemaError(f"{what}: booleans are not numbers")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise SchemaError(f"{what}: {x!r} is not finite")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{what}: cannot parse {x!r} as a number") from None
    raise SchemaError(f"{what}: expected a number, got {type(x).__name__}")


def decimal_str(x: Fraction, places: int = 6) -> str:
    """Fixed-point rendering, round-half-even, computed exactly."""
    q = round(Fraction(x) * 10**places)  # Fraction.__round__ is half-even
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def numeral(x: Fraction) -> int | str:
    """Inverse of :func:`as_rational` for serialization."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        # terminating decimal; find the shortest exact rendering
        places = 1
        while (x * 10**places).denominator != 1:
            places += 1
        return decimal_str(x, places)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Node:
    id: NodeId
    b: Fraction = Fraction(0)


@dataclass(frozen=True)
class Edge:
    u: NodeId
    v: NodeId
    c: Fraction
    d: Fraction

    def other(self, x: NodeId) -> NodeId:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class ODPair:
    s: NodeId
    t: NodeId
    u: Fraction
    g: Fraction


@dataclass(frozen=True)
class Instance:
    """Underlying network, O/D pairs and the construction budget.

    Use :meth:`build` to construct from plain Python values; the constructor
    itself expects already-converted Fractions and validates everything.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    pairs: tuple[ODPair, ...]
    budget: Fraction
    alpha: Fraction | None = None

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        for i in ids:
            if isinstance(i, bool) or not isinstance(i, (int, str)):
                raise SchemaError(f"node id {i!r} must be an int or a string")
        if len({type(i) for i in ids}) > 1:
            raise SchemaError("node ids must be all ints or all strings")
        seen: set[NodeId] = set()
        for i in ids:
            if i in seen:
                raise DuplicateIdError(f"duplicate node id {i!r}")
            seen.add(i)
        for n in self.nodes:
            if n.b < 0:
                raise NegativeValueError(f"node {n.id!r}: negative cost {n.b}")
        for k, e in enumerate(self.edges):
            for x in (e.u, e.v):
                if x not in seen:
                    raise UnknownIdError(f"edge {k}: unknown endpoint {x!r}")
            if e.u == e.v:
                raise SelfLoopError(f"edge {k}: self-loop at {e.u!r}")
            if e.c < 0:
                raise NegativeValueError(f"edge {k}: negative cost {e.c}")
            if e.d < 0:
                raise NegativeValueError(f"edge {k}: negative length {e.d}")
        for k, w in enumerate(self.pairs):
            for x in (w.s, w.t):
                if x not in seen:
                    raise UnknownIdError(f"pair {k}: unknown node {x!r}")
            if w.s == w.t:
                raise SameEndpointsError(f"pair {k}: origin equals destination ({w.s!r})")
            if w.u <= 0:
                raise NonPositiveValueError(f"pair {k}: utility must be > 0, got {w.u}")
            if w.g <= 0:
                raise NonPositiveValueError(f"pair {k}: demand must be > 0, got {w.g}")
        if not self.pairs:
            raise ZeroDemandError("instance has no O/D pairs (total demand must be > 0)")
        if self.budget < 0:
            raise NegativeValueError(f"negative budget {self.budget}")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise SchemaError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def build(
        cls,
        nodes: Iterable[tuple[NodeId, Any]],
        edges: Iterable[tuple[NodeId, NodeId, Any, Any]],
        pairs: Iterable[tuple[NodeId, NodeId, Any, Any]],
        budget: Any = None,
        alpha: Any = None,
    ) -> "Instance":
        """Build from ``(id, b)``, ``(u, v, c, d)`` and ``(s, t, u, g)`` tuples."""
        ns = tuple(Node(i, as_rational(b, f"node {i!r} cost")) for i, b in nodes)
        es = tuple(
            Edge(u, v, as_rational(c, f"edge {k} cost"), as_rational(d, f"edge {k} length"))
            for k, (u, v, c, d) in enumerate(edges)
        )
        ps = tuple(
            ODPair(s, t, as_rational(u, f"pair {k} utility"), as_rational(g, f"pair {k} demand"))
            for k, (s, t, u, g) in enumerate(pairs)
        )
        if (budget is None) == (alpha is None):
            raise SchemaError("give exactly one of budget and alpha")
        if alpha is not None:
            a = as_rational(alpha, "alpha")
            total = sum((n.b for n in ns), Fraction(0)) + sum((e.c for e in es), Fraction(0))
            return cls(ns, es, ps, a * total, a)
        return cls(ns, es, ps, as_rational(budget, "budget"))

    @cached_property
    def node_cost(self) -> dict[NodeId, Fraction]:
        return {n.id: n.b for n in self.nodes}

    @cached_property
    def node_ids(self) -> tuple[NodeId, ...]:
        return tuple(n.id for n in self.nodes)

    @cached_property
    def total_cost(self) -> Fraction:
        return sum(self.node_cost.values(), Fraction(0)) + sum(
            (e.c for e in self.edges), Fraction(0)
        )

    @cached_property
    def total_demand(self) -> Fraction:
        return sum((w.g for w in self.pairs), Fraction(0))

    def edge_id(self, u: NodeId, v: NodeId) -> int:
        """Id of the first edge joining ``u`` and ``v`` (either orientation)."""
        for k, e in enumerate(self.edges):
            if {e.u, e.v} == {u, v}:
                return k
        raise UnknownIdError(f"no edge between {u!r} and {v!r}")

    def subgraph(self, edges: Iterable[int | tuple[NodeId, NodeId]]) -> "Subgraph":
        """Subgraph from edge ids and/or endpoint pairs, checked against this instance."""
        ids = []
        for e in edges:
            if isinstance(e, tuple):
                ids.append(self.edge_id(*e))
            else:
                ids.append(e)
        s = Subgraph(tuple(ids))
        check_subgraph(self, s)
        return s


@dataclass(frozen=True, order=True)
class Subgraph:
    """Candidate solution network, identified by its sorted edge ids.

    Ordering is lexicographic on the sorted id tuple; this is the canonical
    order of enumeration and of the final tie-break.
    """

    edges: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    def node_set(self, inst: Instance) -> frozenset[NodeId]:
        return frozenset(x for k in self.edges for x in (inst.edges[k].u, inst.edges[k].v))

    def label(self, inst: Instance | None = None) -> str:
        if inst is None:
            return "{" + ",".join(map(str, self.edges)) + "}"
        return "{" + ",".join(f"({inst.edges[k].u},{inst.edges[k].v})" for k in self.edges) + "}"

    def __len__(self) -> int:
        return len(self.edges)


EMPTY = Subgraph()


def check_subgraph(inst: Instance, s: Subgraph) -> None:
    m = len(inst.edges)
    for k in s.edges:
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < m:
            raise UnknownIdError(f"unknown edge id {k!r} (instance has {m} edges)")


def _check_node(inst: Instance, x: NodeId) -> None:
    if x not in inst.node_cost:
        raise UnknownIdError(f"unknown node id {x!r}")


# -- parsing / serialization -------------------------------------------------


def instance_from_dict(doc: Mapping[str, Any]) -> Instance:
    if not isinstance(doc, Mapping):
        raise SchemaError("instance document must be a JSON object")
    for key in ("nodes", "edges", "pairs"):
        if key not in doc:
            raise SchemaError(f"missing key {key!r}")
        if not isinstance(doc[key], list):
            raise SchemaError(f"{key!r} must be a list")
    extra = set(doc) - {"nodes", "edges", "pairs", "budget", "alpha"}
    if extra:
        raise SchemaError(f"unknown keys: {sorted(extra)}")
    if ("budget" in doc) == ("alpha" in doc):
        raise SchemaError("give exactly one of 'budget' and 'alpha'")

    def fields(item: Any, keys: tuple[str, ...], where: str) -> list[Any]:
        if not isinstance(item, Mapping):
            raise SchemaError(f"{where}: expected an object")
        missing = [k for k in keys if k not in item]
        if missing:
            raise SchemaError(f"{where}: missing {missing}")
        unknown = set(item) - set(keys)
        if unknown:
            raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
        return [item[k] for k in keys]

    nodes = [tuple(fields(n, ("id", "b"), f"nodes[{k}]")) for k, n in enumerate(doc["nodes"])]
    edges = [tuple(fields(e, ("u", "v", "c", "d"), f"edges[{k}]")) for k, e in enumerate(doc["edges"])]
    pairs = [tuple(fields(w, ("s", "t", "u", "g"), f"pairs[{k}]")) for k, w in enumerate(doc["pairs"])]
    return Instance.build(nodes, edges, pairs, budget=doc.get("budget"), alpha=doc.get("alpha"))


def parse_instance(text: str) -> Instance:
    """Parse and validate a JSON instance document.

    JSON numbers with a fractional part are read exactly (``0.1`` is 1/10).
    """
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return instance_from_dict(doc)


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "nodes": [{"id": n.id, "b": numeral(n.b)} for n in inst.nodes],
        "edges": [{"u": e.u, "v": e.v, "c": numeral(e.c), "d": numeral(e.d)} for e in inst.edges],
        "pairs": [{"s": w.s, "t": w.t, "u": numeral(w.u), "g": numeral(w.g)} for w in inst.pairs],
    }
    if inst.alpha is not None:
        doc["alpha"] = numeral(inst.alpha)
    else:
        doc["budget"] = numeral(inst.budget)
    return doc


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


# -- cost / feasibility -------------------------------------------------------


def subgraph_cost(inst: Instance, s: Subgraph) -> Fraction:
    check_subgraph(inst, s)
    nodes = s.node_set(inst)
    return sum((inst.node_cost[i] for i in nodes), Fraction(0)) + sum(
        (inst.edges[k].c for k in s.edges), Fraction(0)
    )


def is_feasible(inst: Instance, s: Subgraph) -> bool:
    return subgraph_cost(inst, s) <= inst.budget


# -- shortest paths -----------------------------------------------------------


def adjacency(inst: Instance, edge_ids: Iterable[int]) -> dict[NodeId, list[tuple[NodeId, Fraction]]]:
    adj: dict[NodeId, list[tuple[NodeId, Fraction]]] = {}
    for k in edge_ids:
        e = inst.edges[k]
        adj.setdefault(e.u, []).append((e.v, e.d))
        adj.setdefault(e.v, []).append((e.u, e.d))
    return adj


def dijkstra(adj: Mapping[NodeId, list[tuple[NodeId, Any]]], source: NodeId) -> dict[NodeId, Any]:
    """Label-setting shortest paths from ``source``; unreachable nodes are absent."""
    dist = {source: 0}
    done: set[NodeId] = set()
    heap: list[tuple[Any, int, NodeId]] = [(0, 0, source)]
    tick = 1  # node ids may not be mutually comparable across types
    while heap:
        d, _, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        for y, length in adj.get(x, ()):
            nd = d + length
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, tick, y))
                tick += 1
    return dist


def shortest_path_length(inst: Instance, s: Subgraph, a: NodeId, b: NodeId) -> Length:
    """Length of a shortest a-b path using only edges of ``s``."""
    _check_node(inst, a)
    _check_node(inst, b)
    check_subgraph(inst, s)
    adj = adjacency(inst, s.edges)
    if a not in adj or b not in adj:
        return UNREACHABLE
    d = dijkstra(adj, a).get(b)
    return UNREACHABLE if d is None else Fraction(d)


def network_distances(inst: Instance, source: NodeId) -> dict[NodeId, Length]:
    """Distances from ``source`` in the full underlying network."""
    _check_node(inst, source)
    dist = dijkstra(adjacency(inst, range(len(inst.edges))), source)
    return {i: Fraction(dist[i]) if i in dist else UNREACHABLE for i in inst.node_ids}


def served_length(inst: Instance, s: Subgraph, w: ODPair) -> Fraction:
    """min(d_S(w), u^w): the trip length pair ``w`` actually experiences."""
    d = shortest_path_length(inst, s, w.s, w.t)
    return w.u if d >= w.u else Fraction(d)


def is_covered(inst: Instance, s: Subgraph, w: ODPair) -> bool:
    return shortest_path_length(inst, s, w.s, w.t) <= w.u


def restricted_subnetwork(inst: Instance, w: ODPair) -> Subgraph:
    """All edges lying on some simple origin-destination path of length <= u^w."""
    adj: dict[NodeId, list[tuple[NodeId, Fraction, int]]] = {}
    for k, e in enumerate(inst.edges):
        adj.setdefault(e.u, []).append((e.v, e.d, k))
        adj.setdefault(e.v, []).append((e.u, e.d, k))
    # distances to the destination give an admissible prune for the path search
    to_t = network_distances(inst, w.t)
    keep: set[int] = set()
    on_path: set[NodeId] = {w.s}
    used: list[int] = []

    def extend(x: NodeId, length: Fraction) -> None:
        if x == w.t:
            keep.update(used)
            return
        for y, d, k in adj.get(x, ()):
            if y in on_path:
                continue
            if length + d + to_t[y] > w.u:
                continue
            on_path.add(y)
            used.append(k)
            extend(y, length + d)
            used.pop()
            on_path.discard(y)

    extend(w.s, Fraction(0))
    return Subgraph(tuple(keep))
