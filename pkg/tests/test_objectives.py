from fractions import Fraction as F

import pytest

from centdian import builtin_instance
from centdian.core import EMPTY, Instance, Subgraph
from centdian.objectives import (
    ObjectiveVector,
    chebyshev_kink,
    eval_centdian,
    eval_chebyshev,
    eval_gc,
    eval_objectives,
    objectives_from_lengths,
)


@pytest.fixture(scope="module")
def ex2():
    return builtin_instance("example2")


def test_example2_median_network(ex2):
    v = eval_objectives(ex2, ex2.subgraph([(1, 2), (2, 3), (2, 4)]))
    assert v.median == F(4010, 120)
    assert v.center == 92


def test_example2_center_network(ex2):
    v = eval_objectives(ex2, ex2.subgraph([(1, 3), (3, 5), (5, 6)]))
    assert (v.center, v.median, v.weighted_center) == (80, F(5500, 120), 40)


def test_empty_subgraph_serves_nobody():
    v = eval_objectives(builtin_instance("example1"), EMPTY)
    assert v.center == v.median == 92


def test_centdian_endpoints():
    v = ObjectiveVector(F(80), F(6500, 115), F(60), 0)
    assert eval_centdian(v, 0) == v.median
    assert eval_centdian(v, 1) == v.center
    assert eval_centdian(v, F(1, 2)) == F(80 * 115 + 6500, 230)


def test_centdian_beyond_one():
    v = ObjectiveVector(F(30), F(2300, 130), F(30), 0)
    assert eval_centdian(v, 2) == F(5500, 130)


def test_centdian_rejects_negative_lambda():
    with pytest.raises(ValueError):
        eval_centdian(ObjectiveVector(F(1), F(1), F(1), 0), F(-1))


def test_chebyshev():
    s_c = ObjectiveVector(F(70), F(7500, 115), F(70), 0)
    assert eval_chebyshev(s_c, F(1, 2)) == 35
    assert eval_chebyshev(s_c, 0) == s_c.median
    assert eval_chebyshev(s_c, 1) == s_c.center
    with pytest.raises(ValueError):
        eval_chebyshev(s_c, F(3, 2))


def test_chebyshev_kink_balances_both_terms():
    v = ObjectiveVector(F(80), F(6500, 115), F(80), 0)
    lam = chebyshev_kink(v)
    assert lam == v.median / (v.center + v.median)
    assert lam * v.center == (1 - lam) * v.median == v.center * v.median / (v.center + v.median)


def test_gc_examples():
    ex3 = builtin_instance("example3")
    s_gc = ex3.subgraph([(2, 3), (3, 5), (4, 5), (4, 6)])
    assert eval_gc(eval_objectives(ex3, s_gc)) == 92 - F(9550, 105)
    ex4 = builtin_instance("example4")
    s2 = ex4.subgraph([(1, 3), (3, 4), (2, 4)])
    assert eval_gc(eval_objectives(ex4, s2)) == 30 - F(2300, 130)


def test_gc_single_pair_is_zero():
    inst = Instance.build([(1, 0), (2, 0)], [(1, 2, 1, 5)], [(1, 2, 9, 3)], budget=1)
    assert eval_gc(eval_objectives(inst, Subgraph((0,)))) == 0
    assert eval_gc(eval_objectives(inst, Subgraph((0,))), weighted=True) == 0


def test_weighted_gc_is_absolute():
    v = ObjectiveVector(F(10), F(8), F(5), 0)
    assert eval_gc(v, weighted=True) == 3


def test_weighted_center_ties_prefer_longer_then_earlier():
    inst = Instance.build(
        [(1, 0), (2, 0), (3, 0), (4, 0)],
        [(1, 2, 0, 1)],
        [(1, 2, 10, 2), (3, 4, 20, 1), (1, 3, 20, 1)],  # g*l: 20, 20, 20
        budget=0,
    )
    v = eval_objectives(inst, EMPTY)
    assert (v.weighted_center, v.argmax_pair) == (20, 1)


def test_weighted_center_can_grow_when_edges_are_added():
    # the argmax pair switches once the heavy pair is served
    inst = Instance.build([(1, 0), (2, 0), (3, 0), (4, 0)], [(1, 2, 0, 1)], [(1, 2, 5, 10), (3, 4, 40, 1)], budget=0)
    before = eval_objectives(inst, EMPTY).weighted_center
    after = eval_objectives(inst, Subgraph((0,))).weighted_center
    assert (before, after) == (5, 40)


def test_lengths_dimension_checked():
    with pytest.raises(ValueError):
        objectives_from_lengths(builtin_instance("example1"), [F(1)])
