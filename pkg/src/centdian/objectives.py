"""Center, median, weighted-center and the scalarizations built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Instance, Subgraph, served_length


@dataclass(frozen=True)
class ObjectiveVector:
    """Exact objective values of one subgraph.

    ``argmax_pair`` is the index (in ``Instance.pairs``) of the pair whose
    demand-weighted served length is largest; ``weighted_center`` is that
    pair's served length.
    """

    center: Fraction
    median: Fraction
    weighted_center: Fraction
    argmax_pair: int

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return (self.center, self.median)


def objectives_from_lengths(inst: Instance, lengths: Sequence[Fraction]) -> ObjectiveVector:
    if len(lengths) != len(inst.pairs):
        raise ValueError(f"expected {len(inst.pairs)} served lengths, got {len(lengths)}")
    center = max(lengths)
    median = sum((w.g * x for w, x in zip(inst.pairs, lengths)), Fraction(0)) / inst.total_demand
    # largest g*l, then largest l, then earliest pair
    best = min(
        range(len(lengths)),
        key=lambda k: (-inst.pairs[k].g * lengths[k], -lengths[k], k),
    )
    return ObjectiveVector(Fraction(center), median, Fraction(lengths[best]), best)


def served_lengths(inst: Instance, s: Subgraph) -> tuple[Fraction, ...]:
    return tuple(served_length(inst, s, w) for w in inst.pairs)


def eval_objectives(inst: Instance, s: Subgraph) -> ObjectiveVector:
    return objectives_from_lengths(inst, served_lengths(inst, s))


def eval_centdian(v: ObjectiveVector, lam: Fraction) -> Fraction:
    """lam*F_c + (1-lam)*F_m; any lam >= 0 is accepted."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    return lam * v.center + (1 - lam) * v.median


def eval_chebyshev(v: ObjectiveVector, lam: Fraction) -> Fraction:
    """max(lam*F_c, (1-lam)*F_m) for lam in [0, 1]."""
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return max(lam * v.center, (1 - lam) * v.median)


def eval_gc(v: ObjectiveVector, weighted: bool = False) -> Fraction:
    if weighted:
        return abs(v.weighted_center - v.median)
    return v.center - v.median


def chebyshev_kink(v: ObjectiveVector) -> Fraction:
    """The lambda at which both terms of the Chebyshev function are equal."""
    if v.center + v.median == 0:
        raise ZeroDivisionError("kink undefined when F_c = F_m = 0")
    return v.median / (v.center + v.median)
