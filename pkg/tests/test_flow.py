import pytest

from chargesched.flow import FlowNetwork


def test_simple_path_with_lower_bound():
    net = FlowNetwork()
    a = net.add_arc("s", "x", 5)
    b = net.add_arc("x", "t", 5, lower=3)
    assert net.feasible("s", "t")
    assert net.flow(b) >= 3 and net.flow(a) == net.flow(b)


def test_lower_bound_exceeds_upstream_capacity():
    net = FlowNetwork()
    net.add_arc("s", "x", 2)
    net.add_arc("x", "t", 5, lower=3)
    assert not net.feasible("s", "t")


def test_circulation_without_return_arc():
    net = FlowNetwork()
    net.add_arc("a", "b", 4, lower=1)
    net.add_arc("b", "a", 4)
    assert net.feasible()
    net2 = FlowNetwork()
    net2.add_arc("a", "b", 4, lower=1)
    assert not net2.feasible()


def test_two_demands_share_a_source():
    # two sinks-with-lower-bounds competing for 3 units
    net = FlowNetwork()
    net.add_arc("s", "m", 3)
    net.add_arc("m", "x", 3)
    net.add_arc("m", "y", 3)
    net.add_arc("x", "t", 3, lower=2)
    net.add_arc("y", "t", 3, lower=2)
    assert not net.feasible("s", "t")


def test_bad_bounds():
    with pytest.raises(ValueError):
        FlowNetwork().add_arc("a", "b", 1, lower=2)


def test_flow_before_solve():
    net = FlowNetwork()
    arc = net.add_arc("a", "b", 1)
    with pytest.raises(RuntimeError):
        net.flow(arc)
