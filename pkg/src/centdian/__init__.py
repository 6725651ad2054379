"""Exact budget-constrained network design under center/median criteria."""

from importlib import resources

from .access import AccessParams, access_served_length, eval_access_objectives, extended_distance
from .core import (
    EMPTY,
    UNREACHABLE,
    Instance,
    InstanceError,
    ODPair,
    Subgraph,
    dump_instance,
    is_feasible,
    load_instance,
    parse_instance,
    restricted_subnetwork,
    served_length,
    shortest_path_length,
    subgraph_cost,
)
from .enumeration import CapExceededError, enumerate_feasible, evaluate_feasible
from .objectives import ObjectiveVector, eval_centdian, eval_chebyshev, eval_gc, eval_objectives
from .pareto import compute_po, compute_po2, export_frontier, max_centdian_intervals, po2_subset_po
from .solver import Criterion, Domain, Kind, Solution, solve, solve_lex_centdian, solve_max_centdian, solve_with_efficiency

BUILTIN = ("example1", "example2", "example3", "example4", "example5", "example5_budget90", "metro")


def builtin_instance(name: str) -> Instance:
    """One of the bundled worked-example instances (see ``BUILTIN``)."""
    if name not in BUILTIN:
        raise KeyError(f"unknown builtin instance {name!r}; choose from {BUILTIN}")
    return parse_instance(resources.files(__package__).joinpath("data", f"{name}.json").read_text())
