"""Exact argmin solvers for every design criterion.

Each criterion maps an :class:`ObjectiveVector` to a sort key; the solver
returns the feasible subgraph (within the criterion's domain) with the smallest
key. Ties on the criterion value are broken by the smaller median value, then
by the cheaper construction cost, then by canonical edge order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .access import AccessParams
from .core import Instance, Subgraph
from .enumeration import DEFAULT_CAP, CapExceededError, Evaluated, Kernel, evaluate_feasible
from .objectives import ObjectiveVector, eval_centdian, eval_chebyshev, eval_gc
from .pareto import po2_from_records, po_from_records


class Kind(str, Enum):
    MEDIAN = "median"
    CENTER = "center"
    WEIGHTED_CENTER = "weighted_center"
    CENTDIAN = "centdian"
    GEN_CENTER = "gen_center"
    WEIGHTED_GEN_CENTER = "weighted_gen_center"
    RESTRICTED_GEN_CENTER = "restricted_gen_center"
    RESTRICTED_CENTDIAN = "restricted_centdian"
    LEX_CENTDIAN = "lex_centdian"
    MAX_CENTDIAN = "max_centdian"


class Domain(str, Enum):
    ALL = "all"
    PO = "po"
    PO2 = "po2"


_NEEDS_LAMBDA = {Kind.CENTDIAN, Kind.RESTRICTED_CENTDIAN, Kind.MAX_CENTDIAN}
_DEFAULT_DOMAIN = {
    Kind.GEN_CENTER: Domain.PO,
    Kind.WEIGHTED_GEN_CENTER: Domain.PO,
    Kind.RESTRICTED_GEN_CENTER: Domain.PO2,
    Kind.RESTRICTED_CENTDIAN: Domain.PO2,
}


@dataclass(frozen=True)
class Criterion:
    """A design criterion, its lambda where relevant, and an optional domain override.

    ``domain=Domain.ALL`` on a generalized-center kind gives the unrestricted
    variant (minimize over every feasible subgraph).
    """

    kind: Kind
    lam: Optional[Fraction] = None
    domain_override: Optional[Domain] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.domain_override is not None:
            object.__setattr__(self, "domain_override", Domain(self.domain_override))
        if self.kind in _NEEDS_LAMBDA:
            if self.lam is None:
                raise ValueError(f"criterion {self.kind.value} needs lambda")
            lam = Fraction(self.lam)
            object.__setattr__(self, "lam", lam)
            if self.kind is Kind.MAX_CENTDIAN and not 0 < lam < 1:
                raise ValueError(f"max_centdian needs 0 < lambda < 1, got {lam}")
            if self.kind is Kind.CENTDIAN and not 0 <= lam <= 1:
                raise ValueError(f"centdian over all feasible subgraphs needs 0 <= lambda <= 1, got {lam}")
            if self.kind is Kind.RESTRICTED_CENTDIAN and lam < 0:
                raise ValueError(f"lambda must be >= 0, got {lam}")
        elif self.lam is not None:
            raise ValueError(f"criterion {self.kind.value} takes no lambda")

    @property
    def domain(self) -> Domain:
        if self.domain_override is not None:
            return self.domain_override
        return _DEFAULT_DOMAIN.get(self.kind, Domain.ALL)

    def value(self, v: ObjectiveVector) -> Fraction:
        k = self.kind
        if k is Kind.MEDIAN:
            return v.median
        if k in (Kind.CENTER, Kind.LEX_CENTDIAN):
            return v.center
        if k is Kind.WEIGHTED_CENTER:
            return v.weighted_center
        if k in (Kind.CENTDIAN, Kind.RESTRICTED_CENTDIAN):
            return eval_centdian(v, self.lam)
        if k is Kind.MAX_CENTDIAN:
            return eval_chebyshev(v, self.lam)
        if k is Kind.WEIGHTED_GEN_CENTER:
            return eval_gc(v, weighted=True)
        return eval_gc(v)

    def key(self, v: ObjectiveVector) -> tuple[Fraction, Fraction]:
        if self.kind is Kind.MAX_CENTDIAN:
            return (eval_chebyshev(v, self.lam), eval_centdian(v, self.lam))
        return (self.value(v), v.median)

    @property
    def monotone(self) -> bool:
        """Whether every key component can only drop when edges are added.

        Only these criteria may use branch and bound.
        """
        if self.domain is not Domain.ALL:
            return False
        return self.kind in (Kind.MEDIAN, Kind.CENTER, Kind.CENTDIAN, Kind.LEX_CENTDIAN, Kind.MAX_CENTDIAN)


def criterion(name: str, lam=None, domain: Optional[str] = None) -> Criterion:
    """Criterion from a user-facing name (dashes or underscores)."""
    return Criterion(Kind(name.replace("-", "_")), None if lam is None else Fraction(lam), None if domain is None else Domain(domain))


@dataclass(frozen=True)
class Solution:
    subgraph: Subgraph
    objectives: ObjectiveVector
    value: Fraction
    certificate: int  # feasible subgraphs evaluated
    domain: Domain
    method: str = "enumerate"


def _argmin(records: Iterable[Evaluated], key: Callable[[ObjectiveVector], tuple]) -> Evaluated:
    return min(records, key=lambda r: (key(r.objectives), r.cost, r.subgraph))


def _domain_records(records: Sequence[Evaluated], domain: Domain) -> list[Evaluated]:
    if domain is Domain.ALL:
        return list(records)
    keep = (po_from_records(records) if domain is Domain.PO else po2_from_records(records)).subgraphs()
    return [r for r in records if r.subgraph in keep]


def branch_and_bound(inst: Instance, crit: Criterion) -> Solution:
    """Depth-first search in canonical order with a monotone lower bound.

    The bound for a search node is the key of the current edge set plus every
    later edge that fits the remaining budget on its own. Every key component
    is nonincreasing under edge addition, so nothing below the node has a
    smaller key. On an equal key a descendant can only win by being strictly
    cheaper than the incumbent, since it comes later in canonical order, and no
    descendant is cheaper than the node itself.
    """
    if not crit.monotone:
        raise ValueError(f"branch and bound needs a monotone criterion, not {crit.kind.value}")
    kernel = Kernel(inst)
    m = len(inst.edges)
    eu, ev, ec, nc, budget = kernel.eu, kernel.ev, kernel.ecost, kernel.ncost, kernel.budget
    counts = [0] * kernel.n
    chosen: list[int] = []
    best: list = [None, None]  # key, record
    visited = 0

    def step(j: int, cost: int) -> Optional[int]:
        u, v = eu[j], ev[j]
        new = cost + ec[j] + (nc[u] if counts[u] == 0 else 0) + (nc[v] if counts[v] == 0 else 0)
        return new if new <= budget else None

    def rec(start: int, cost: int) -> None:
        nonlocal visited
        visited += 1
        rec_ = kernel.evaluate(tuple(chosen))
        key = crit.key(rec_.objectives)
        if best[0] is None or key < best[0] or (key == best[0] and cost < best[1].cost):
            best[0], best[1] = key, rec_
        children = [j for j in range(start, m) if step(j, cost) is not None]
        if not children:
            return
        bound = crit.key(kernel.objectives(kernel.scaled_lengths(tuple(chosen) + tuple(children))))
        if bound > best[0] or (bound == best[0] and best[1].cost <= cost):
            return
        for j in children:
            new = step(j, cost)
            counts[eu[j]] += 1
            counts[ev[j]] += 1
            chosen.append(j)
            rec(j + 1, new)
            chosen.pop()
            counts[eu[j]] -= 1
            counts[ev[j]] -= 1

    rec(0, 0)
    r = best[1]
    return Solution(r.subgraph, r.objectives, crit.value(r.objectives), visited, Domain.ALL, "bnb")


# above this many edges "auto" prefers branch and bound whenever it applies
AUTO_BNB_EDGES = 16


def _pick_method(inst: Instance, crit: Criterion, cap: int, force: bool, access, method: str) -> str:
    if method not in ("auto", "enumerate", "bnb"):
        raise ValueError(f"unknown method {method!r}")
    if method == "bnb" and (access is not None or not crit.monotone):
        raise ValueError("branch and bound only applies to monotone criteria in the core model")
    if method != "auto":
        return method
    m = len(inst.edges)
    if m > AUTO_BNB_EDGES and access is None and crit.monotone:
        return "bnb"
    if m <= cap or force:
        return "enumerate"
    raise CapExceededError(m, cap)


def solve(
    inst: Instance,
    crit: Criterion,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
    method: str = "auto",
) -> Solution:
    """Minimize ``crit`` over its domain.

    ``method="auto"`` uses branch and bound for monotone criteria on more than
    ``AUTO_BNB_EDGES`` edges and full enumeration otherwise (within ``cap``).
    """
    how = _pick_method(inst, crit, cap, force, access, method)
    if how == "bnb":
        return branch_and_bound(inst, crit)
    records = evaluate_feasible(inst, access=access, cap=cap if not force else len(inst.edges), workers=workers)
    best = _argmin(_domain_records(records, crit.domain), crit.key)
    return Solution(best.subgraph, best.objectives, crit.value(best.objectives), len(records), crit.domain)


def solve_lex_centdian(inst: Instance, **kw) -> Solution:
    return solve(inst, Criterion(Kind.LEX_CENTDIAN), **kw)


def solve_max_centdian(inst: Instance, lam, **kw) -> Solution:
    return solve(inst, Criterion(Kind.MAX_CENTDIAN, Fraction(lam)), **kw)


def solve_with_efficiency(
    inst: Instance,
    crit: Criterion,
    delta,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> Solution:
    """Minimize ``crit`` subject to F_m(S) <= (1 + delta) * optimal median value.

    The criterion's domain (PO or PO2) is computed over all feasible subgraphs
    and then intersected with the efficiency constraint.
    """
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    records = evaluate_feasible(inst, access=access, cap=cap if not force else len(inst.edges), workers=workers)
    best_median = min(r.objectives.median for r in records)
    limit = (1 + delta) * best_median
    pool = [r for r in _domain_records(records, crit.domain) if r.objectives.median <= limit]
    best = _argmin(pool, crit.key)
    return Solution(best.subgraph, best.objectives, crit.value(best.objectives), len(records), crit.domain)
