"""Both Pareto sets, the lambda decomposition of the bicriteria frontier, and CSV export.

``PO`` compares subgraphs by their per-pair served lengths; ``PO2`` by the
(center, median) point. Identical vectors never dominate each other.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

from .access import AccessParams
from .core import Instance, Subgraph, decimal_str
from .enumeration import DEFAULT_CAP, Evaluated, evaluate_feasible
from .objectives import ObjectiveVector, eval_centdian, eval_chebyshev

ParetoKind = Literal["PO", "PO2"]


@dataclass(frozen=True)
class LambdaInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, lam: Fraction) -> bool:
        above = lam >= self.lo if self.lo_closed else lam > self.lo
        below = lam <= self.hi if self.hi_closed else lam < self.hi
        return above and below

    def __str__(self) -> str:
        return (
            f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"
        )


@dataclass(frozen=True)
class ParetoEntry:
    point: tuple[Fraction, ...]
    representatives: tuple[Subgraph, ...]
    intervals: tuple[LambdaInterval, ...] = ()


@dataclass(frozen=True)
class ParetoSet:
    kind: ParetoKind
    entries: tuple[ParetoEntry, ...]

    @property
    def points(self) -> list[tuple[Fraction, ...]]:
        return [e.point for e in self.entries]

    def subgraphs(self) -> set[Subgraph]:
        return {s for e in self.entries for s in e.representatives}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, s: Subgraph) -> bool:
        return any(s in e.representatives for e in self.entries)


def _dominates(a: Sequence, b: Sequence) -> bool:
    return a != b and all(x <= y for x, y in zip(a, b))


def _group(records: Iterable[Evaluated], key) -> dict[tuple, list[Subgraph]]:
    groups: dict[tuple, list[Subgraph]] = {}
    for r in records:
        groups.setdefault(key(r), []).append(r.subgraph)
    return groups


def nondominated(vectors: Iterable[tuple]) -> list[tuple]:
    """Distinct vectors not dominated by any other; weak dominance, one strict."""
    distinct = sorted(set(vectors), key=lambda v: (sum(v), v))
    keep: list[tuple] = []
    for v in distinct:
        # a dominator has a strictly smaller coordinate sum, so it is already in keep
        if not any(_dominates(k, v) for k in keep):
            keep.append(v)
    return keep


def po_from_records(records: Sequence[Evaluated]) -> ParetoSet:
    groups = _group(records, lambda r: r.scaled)
    keep = nondominated(groups)
    scale = records[0].scale
    entries = [
        ParetoEntry(tuple(Fraction(x, scale) for x in v), tuple(sorted(groups[v])))
        for v in sorted(keep, key=lambda v: min(groups[v]))
    ]
    return ParetoSet("PO", tuple(entries))


def nondominated_points(points: Iterable[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """2-D sweep: sorted by F_c, a point survives if its F_m beats every earlier one."""
    out = []
    best_m = None
    for c, m in sorted(set(points)):
        if best_m is None or m < best_m:
            out.append((c, m))
            best_m = m
    return out


def po2_from_records(records: Sequence[Evaluated]) -> ParetoSet:
    groups = _group(records, lambda r: r.objectives.point)
    keep = nondominated_points(groups)
    return ParetoSet("PO2", tuple(ParetoEntry(p, tuple(sorted(groups[p]))) for p in keep))


def _records(inst, access, cap, force, workers):
    return evaluate_feasible(inst, access=access, cap=cap, force=force, workers=workers)


def compute_po(
    inst: Instance,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> ParetoSet:
    return po_from_records(_records(inst, access, cap, force, workers))


def compute_po2(
    inst: Instance,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> ParetoSet:
    return po2_from_records(_records(inst, access, cap, force, workers))


def po2_subset_po(inst: Instance, **kw) -> bool:
    records = _records(inst, kw.get("access"), kw.get("cap", DEFAULT_CAP), kw.get("force", False), kw.get("workers", 1))
    return po2_from_records(records).subgraphs() <= po_from_records(records).subgraphs()


# -- lambda decomposition -------------------------------------------------------


def _as_vector(point: tuple[Fraction, Fraction]) -> ObjectiveVector:
    return ObjectiveVector(point[0], point[1], point[0], 0)


def _candidate_breakpoints(points: Sequence[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Every lambda in (0, 1) where two envelope branches or two cent-dian lines meet."""
    cands = set()
    for ca, ma in points:
        for cb, mb in points:
            # lam*ca = (1-lam)*mb
            if ca + mb > 0:
                cands.add(mb / (ca + mb))
            # lam*ca + (1-lam)*ma = lam*cb + (1-lam)*mb
            slope = (ca - ma) - (cb - mb)
            if slope != 0:
                cands.add((mb - ma) / slope)
    return sorted(x for x in cands if 0 < x < 1)


def winner_at(entries: Sequence[ParetoEntry], lam: Fraction) -> int:
    """Index of the entry that is the maximum lambda-cent-dian at ``lam``."""
    return min(
        range(len(entries)),
        key=lambda k: (
            eval_chebyshev(_as_vector(entries[k].point), lam),
            eval_centdian(_as_vector(entries[k].point), lam),
            entries[k].representatives[0],
        ),
    )


def lambda_intervals(po2: ParetoSet) -> ParetoSet:
    """Attach to each PO2 entry the part of (0, 1) on which it wins."""
    entries = po2.entries
    if not entries:
        return po2
    bps = _candidate_breakpoints([e.point for e in entries])
    grid = [Fraction(0)] + bps + [Fraction(1)]
    # segments alternate: open gap (grid[i], grid[i+1]) then breakpoint grid[i+1]
    pieces: list[tuple[int, Fraction, Fraction, bool, bool]] = []
    for i in range(len(grid) - 1):
        lo, hi = grid[i], grid[i + 1]
        pieces.append((winner_at(entries, (lo + hi) / 2), lo, hi, False, False))
        if hi < 1:
            pieces.append((winner_at(entries, hi), hi, hi, True, True))
    merged: list[list] = []
    for who, lo, hi, lc, hc in pieces:
        if merged and merged[-1][0] == who:
            merged[-1][2], merged[-1][4] = hi, hc
        else:
            merged.append([who, lo, hi, lc, hc])
    per_entry: dict[int, list[LambdaInterval]] = {}
    for who, lo, hi, lc, hc in merged:
        per_entry.setdefault(who, []).append(LambdaInterval(lo, hi, lc, hc))
    return ParetoSet(
        po2.kind,
        tuple(
            ParetoEntry(e.point, e.representatives, tuple(per_entry.get(k, ())))
            for k, e in enumerate(entries)
        ),
    )


def max_centdian_intervals(
    inst: Instance,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> ParetoSet:
    return lambda_intervals(compute_po2(inst, access=access, cap=cap, force=force, workers=workers))


# -- frontier export -------------------------------------------------------------


@dataclass(frozen=True)
class FrontierRow:
    point_id: int
    point: tuple[Fraction, Fraction]
    nondominated: bool
    representatives: tuple[Subgraph, ...]
    intervals: tuple[LambdaInterval, ...] = ()


@dataclass(frozen=True)
class Frontier:
    rows: tuple[FrontierRow, ...]
    n_feasible: int = field(default=0)

    @property
    def n_points(self) -> int:
        return len(self.rows)


def export_frontier(
    inst: Instance,
    *,
    access: Optional[AccessParams] = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int = 1,
) -> Frontier:
    """All distinct (F_c, F_m) points of feasible subgraphs, sorted ascending."""
    records = _records(inst, access, cap, force, workers)
    groups = _group(records, lambda r: r.objectives.point)
    po2 = {e.point: e for e in lambda_intervals(po2_from_records(records)).entries}
    rows = []
    for k, p in enumerate(sorted(groups)):
        e = po2.get(p)
        rows.append(FrontierRow(k, p, e is not None, tuple(sorted(groups[p])), e.intervals if e else ()))
    return Frontier(tuple(rows), len(records))


FRONTIER_COLUMNS = (
    "point_id", "F_c_num", "F_c_den", "F_m_num", "F_m_den", "F_c_dec", "F_m_dec",
    "nondominated", "lambda_lo", "lambda_hi", "representatives",
)


def frontier_csv(frontier: Frontier) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(FRONTIER_COLUMNS)
    for r in frontier.rows:
        c, m = r.point
        lo = hi = ""
        if r.intervals:
            lo = str(r.intervals[0].lo)
            hi = str(r.intervals[-1].hi)
        out.writerow([
            r.point_id, c.numerator, c.denominator, m.numerator, m.denominator,
            decimal_str(c), decimal_str(m), int(r.nondominated), lo, hi,
            " ".join(s.label() for s in r.representatives),
        ])
    return buf.getvalue()
