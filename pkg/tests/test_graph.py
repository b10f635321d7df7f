import pytest

from vlcm.errors import NonPositiveResult, UnknownOperand
from vlcm.graph import AdderGraph, Design, DesignStats, Op, Ref, evaluate, merge, output_width, stats, verify_design


def fig1c():
    g = AdderGraph()
    x = g.input()
    n5 = g.add_node(Op.ADD, x.shifted(2), x)
    n59 = g.add_node(Op.SUB, x.shifted(6), n5)
    n43 = g.add_node(Op.SUB, n59, x.shifted(4))
    return Design(g, {"a": n43, "b": n59}, {"a": 43, "b": 59})


def test_node_values_and_depths():
    g = AdderGraph()
    x = g.input()
    five = g.add_node(Op.ADD, x.shifted(2), x)
    assert g.value(five) == 5 and g.depth(five) == 1
    r = g.add_node(Op.SUB, x.shifted(6), five)
    assert g.value(r) == 59 and g.depth(r) == 2


def test_negative_result_rejected():
    g = AdderGraph()
    with pytest.raises(NonPositiveResult):
        g.add_node(Op.SUB, g.input(0), g.input(3))


def test_unknown_operand():
    g = AdderGraph()
    with pytest.raises(UnknownOperand):
        g.add_node(Op.ADD, Ref(7), g.input())


def test_dedup_returns_existing_node():
    g = AdderGraph()
    x = g.input()
    a = g.add_node(Op.ADD, x.shifted(2), x)
    b = g.add_node(Op.ADD, x.shifted(3), x.shifted(1))  # 10 = 5 << 1
    assert g.oper == 1
    assert b == Ref(a.node, 1) and g.value(b) == 10


def test_even_operand_is_shifted_down_inside_the_node():
    g = AdderGraph()
    n31 = g.add_node(Op.SUB, g.input(5), g.input())
    n641 = g.add_node(Op.ADD, g.input(9), g.add_node(Op.ADD, g.input(7), g.input()))
    even = g.add_node(Op.ADD, n31, n641)  # 672 = 21 * 32, kept raw
    r = g.add_node(Op.SUB, n641, g.find(21).shifted(1))  # 641 - 42
    assert g.node(r.node).value == 599 and r.shift == 0
    assert g.node(r.node).rhs == Ref(even.node, -4)
    g.check()
    d = Design(g, {"y": r}, {"y": 599})
    assert evaluate(d, 65535) == {"y": 599 * 65535}


def test_output_width():
    assert output_width(5, 16) == 19
    assert output_width(1, 16) == 16
    assert output_width(65535, 16) == 32


def test_fig1c_stats_and_evaluation():
    d = fig1c()
    assert d.graph.oper == 3
    assert stats(d).step == 3
    assert evaluate(d, 1) == {"a": 43, "b": 59}
    assert evaluate(d, 0) == {"a": 0, "b": 0}
    assert evaluate(d, 12345) == {"a": 43 * 12345, "b": 59 * 12345}
    assert stats(d).oper == 3


def test_merge_with_itself_is_idempotent():
    d = fig1c()
    d.compute_stats()
    m = merge(d, d)
    assert (m.stats.oper, m.stats.step) == (d.stats.oper, d.stats.step)


def test_verify_pass_and_mutation():
    d = fig1c()
    d.compute_stats()
    ok, msg = verify_design(d, 2000)
    assert ok, msg
    node = d.graph.nodes[2]
    node.lhs = Ref(node.lhs.node, node.lhs.shift + 1)
    ok, msg = verify_design(d, 50)
    assert not ok and msg.startswith("x=")


def test_verify_flags_impossible_step_claim():
    d = fig1c()
    d.stats = DesignStats(3, 1)
    ok, msg = verify_design(d, 10)
    assert not ok and "lower bound" in msg


def test_cycle_detected():
    d = fig1c()
    d.graph.nodes[1].lhs = Ref(2, 0)
    with pytest.raises(ValueError):
        d.graph.topo_order()
    assert not verify_design(d, 5)[0]
