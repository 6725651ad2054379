import json
from fractions import Fraction as F

import pytest

from centdian import builtin_instance
from centdian.core import (
    EMPTY,
    UNREACHABLE,
    DuplicateIdError,
    Instance,
    InstanceError,
    NegativeValueError,
    NonPositiveValueError,
    ODPair,
    SameEndpointsError,
    SchemaError,
    SelfLoopError,
    Subgraph,
    UnknownIdError,
    ZeroDemandError,
    as_rational,
    decimal_str,
    dump_instance,
    instance_to_dict,
    is_covered,
    is_feasible,
    numeral,
    parse_instance,
    restricted_subnetwork,
    served_length,
    shortest_path_length,
    subgraph_cost,
)


def _doc(**over):
    doc = {
        "nodes": [{"id": 1, "b": 1}, {"id": 2, "b": 1}, {"id": 3, "b": 1}],
        "edges": [{"u": 1, "v": 2, "c": 1, "d": 3}, {"u": 2, "v": 3, "c": 1, "d": 4}],
        "pairs": [{"s": 1, "t": 3, "u": 10, "g": 1}],
        "budget": 5,
    }
    doc.update(over)
    return doc


class TestNumbers:
    def test_decimal_strings_are_exact(self):
        assert as_rational("0.448") == F(56, 125)
        assert as_rational("7/3") == F(7, 3)

    def test_json_floats_parse_exactly(self):
        inst = parse_instance(json.dumps(_doc()).replace('"budget": 5', '"budget": 0.1'))
        assert inst.budget == F(1, 10)

    def test_rejects_bool_and_nan(self):
        with pytest.raises(SchemaError):
            as_rational(True)
        with pytest.raises(SchemaError):
            as_rational(float("nan"))

    @pytest.mark.parametrize(
        "x, text", [(F(1, 3), "0.333333"), (F(5, 2), "2.500000"), (F("0.0000005"), "0.000000"), (F("0.0000015"), "0.000002")]
    )
    def test_decimal_rendering_half_even(self, x, text):
        assert decimal_str(x) == text

    @pytest.mark.parametrize("x", [F(3), F(1, 8), F(2, 3), F(-7, 4)])
    def test_numeral_round_trips(self, x):
        assert as_rational(numeral(x)) == x


class TestParse:
    def test_example1_shape(self):
        inst = builtin_instance("example1")
        assert (len(inst.nodes), len(inst.edges), len(inst.pairs)) == (6, 9, 3)
        assert inst.total_demand == 300
        assert inst.budget == 90

    def test_example4_costs(self):
        inst = builtin_instance("example4")
        assert inst.total_cost == 60
        assert inst.budget == 50

    def test_alpha_gives_budget(self):
        doc = _doc()
        del doc["budget"]
        doc["alpha"] = "0.5"
        inst = parse_instance(json.dumps(doc))
        assert inst.budget == F(5, 2) and inst.alpha == F(1, 2)

    @pytest.mark.parametrize(
        "over, err",
        [
            ({"pairs": [{"s": 1, "t": 1, "u": 10, "g": 1}]}, SameEndpointsError),
            ({"nodes": [{"id": 1, "b": 1}, {"id": 1, "b": 1}, {"id": 3, "b": 1}]}, DuplicateIdError),
            ({"edges": [{"u": 1, "v": 1, "c": 1, "d": 1}]}, SelfLoopError),
            ({"edges": [{"u": 1, "v": 9, "c": 1, "d": 1}]}, UnknownIdError),
            ({"edges": [{"u": 1, "v": 2, "c": -1, "d": 1}]}, NegativeValueError),
            ({"edges": [{"u": 1, "v": 2, "c": 1, "d": -1}]}, NegativeValueError),
            ({"pairs": [{"s": 1, "t": 3, "u": 0, "g": 1}]}, NonPositiveValueError),
            ({"pairs": [{"s": 1, "t": 3, "u": 1, "g": 0}]}, NonPositiveValueError),
            ({"pairs": []}, ZeroDemandError),
            ({"alpha": 1}, SchemaError),
            ({"extra": 1}, SchemaError),
        ],
    )
    def test_validation_errors(self, over, err):
        with pytest.raises(err):
            parse_instance(json.dumps(_doc(**over)))

    def test_origin_equals_destination_message(self):
        with pytest.raises(InstanceError, match="origin equals destination"):
            parse_instance(json.dumps(_doc(pairs=[{"s": 1, "t": 1, "u": 10, "g": 1}])))

    def test_bad_json(self):
        with pytest.raises(SchemaError):
            parse_instance("{not json")

    def test_round_trip(self):
        for name in ("example1", "example5", "metro"):
            inst = builtin_instance(name)
            assert parse_instance(dump_instance(inst)) == inst

    def test_fraction_values_round_trip(self):
        inst = Instance.build([(1, F(1, 3)), (2, 0)], [(1, 2, "0.25", F(2, 7))], [(1, 2, 5, 1)], budget=F(7, 3))
        again = parse_instance(json.dumps(instance_to_dict(inst)))
        assert again == inst


class TestCost:
    def test_example1_s1(self):
        inst = builtin_instance("example1")
        s1 = inst.subgraph([(1, 2), (2, 4), (4, 6)])
        assert subgraph_cost(inst, s1) == 90
        assert is_feasible(inst, s1)

    def test_empty(self):
        inst = builtin_instance("example1")
        assert subgraph_cost(inst, EMPTY) == 0
        assert is_feasible(inst, EMPTY)

    def test_example5_s1(self):
        inst = builtin_instance("example5")
        assert subgraph_cost(inst, inst.subgraph([(1, 3), (3, 2), (3, 4), (5, 4), (6, 4)])) == 70

    def test_example4_cycle_infeasible(self):
        inst = builtin_instance("example4")
        assert not is_feasible(inst, Subgraph((0, 1, 2, 3)))
        assert all(is_feasible(inst, Subgraph(tuple(k for k in range(4) if k != j))) for j in range(4))

    def test_node_cost_paid_once(self):
        inst = Instance.build([(1, 5), (2, 5), (3, 5)], [(1, 2, 1, 1), (2, 3, 1, 1)], [(1, 3, 9, 1)], budget=100)
        assert subgraph_cost(inst, Subgraph((0, 1))) == 15 + 2

    def test_unknown_edge(self):
        with pytest.raises(UnknownIdError):
            subgraph_cost(builtin_instance("example1"), Subgraph((99,)))


class TestPaths:
    def test_example1_s1(self):
        inst = builtin_instance("example1")
        s1 = inst.subgraph([(1, 2), (2, 4), (4, 6)])
        assert shortest_path_length(inst, s1, 1, 6) == 90
        assert shortest_path_length(inst, s1, 2, 2) == 0
        assert shortest_path_length(inst, s1, 2, 5) == UNREACHABLE

    def test_unknown_node(self):
        with pytest.raises(UnknownIdError):
            shortest_path_length(builtin_instance("example1"), EMPTY, 1, 42)

    def test_unreachable_sorts_last(self):
        assert UNREACHABLE > F(10**9)

    def test_served_length(self):
        inst = builtin_instance("example1")
        s1 = inst.subgraph([(1, 2), (2, 4), (4, 6)])
        w = next(w for w in inst.pairs if (w.s, w.t) == (1, 6))
        assert served_length(inst, s1, w) == 90 and is_covered(inst, s1, w)
        assert all(served_length(inst, EMPTY, x) == 92 for x in inst.pairs)

    def test_uncovered_falls_back_to_utility(self):
        inst = builtin_instance("example2")
        s_c = inst.subgraph([(1, 3), (3, 5), (5, 6)])
        w = next(w for w in inst.pairs if (w.s, w.t) == (2, 3))
        assert served_length(inst, s_c, w) == 40
        assert not is_covered(inst, s_c, w)


class TestRestrictedSubnetwork:
    def test_example3_contains_detour(self):
        inst = builtin_instance("example3")
        w = next(w for w in inst.pairs if (w.s, w.t) == (2, 6))
        assert inst.edge_id(3, 5) in restricted_subnetwork(inst, w).edges

    def test_example1_excludes_long_edge(self):
        inst = builtin_instance("example1")
        w = next(w for w in inst.pairs if (w.s, w.t) == (1, 6))
        assert inst.edge_id(5, 6) not in restricted_subnetwork(inst, w).edges

    def test_tiny_utility_gives_empty(self):
        inst = builtin_instance("example1")
        assert restricted_subnetwork(inst, ODPair(1, 6, F(1), F(1))) == EMPTY
