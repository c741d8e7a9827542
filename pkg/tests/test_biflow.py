import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import instances
from ksplit.approx import scaled_graph
from ksplit.biflow import half_integral_biflow
from ksplit.core import Graph
from ksplit.cuts import c_k1k2_graph
from ksplit.flownet import Infeasible, max_flow

HALF = Fraction(1, 2)


def exhaustive_half_integral(g: Graph, s1, t1, d1, s2, t2, d2) -> bool:
    """Search every half-integral f1; finish f2 with a max flow on leftover capacity."""
    ranges = [[Fraction(j, 2) for j in range(-2 * c, 2 * c + 1)] for _, _, c in g.edges]
    for f1 in itertools.product(*ranges):
        out = {v: Fraction(0) for v in g.vertices}
        for (a, b, _), f in zip(g.edges, f1):
            out[a] += f
            out[b] -= f
        want = {v: 0 for v in g.vertices}
        want[s1] += d1
        want[t1] -= d1
        if out != want:
            continue
        # doubled leftover capacities are integral; an integral flow there is half-integral here
        rest = g.with_capacities(int(2 * (c - abs(f))) for (_, _, c), f in zip(g.edges, f1))
        if max_flow(rest, s2, t2)[0] >= 2 * d2:
            return True
    return False


def check(bf):
    assert bf.violations() == []
    for e, (_, _, cap) in enumerate(bf.graph.edges):
        F, G = bf.combined[e], bf.crossed[e]
        assert abs(bf.f1[e]) + abs(bf.f2[e]) == max(abs(F), abs(G)) <= cap


def test_single_commodity_collapse():
    g = Graph(3, ((1, 2, 2), (2, 3, 2), (1, 3, 1)))
    bf = half_integral_biflow(g, 1, 3, 3, 1, 2, 0)
    check(bf)
    assert all(f == 0 for f in bf.f2)
    assert all(f.denominator == 1 for f in bf.f1)


def test_c4_half_integral(c4):
    g = c4.graph
    bf = half_integral_biflow(g, 1, 3, 1, 2, 4, 1)
    check(bf)
    assert [abs(f) for f in bf.f1] == [HALF] * 4
    assert [abs(f) for f in bf.f2] == [HALF] * 4
    # every edge is saturated and no integral routing exists
    assert not any(
        all(abs(a) + abs(b) <= 1 for a, b in zip(p, q))
        for p in itertools.product((-1, 0, 1), repeat=4)
        for q in itertools.product((-1, 0, 1), repeat=4)
        if p[0] - p[3] == 1 and p[1] - p[0] == 0 and p[2] - p[1] == -1
        and q[1] - q[0] == 1 and q[2] - q[1] == 0 and q[3] - q[2] == -1
    )


def test_c4_infeasible(c4):
    with pytest.raises(Infeasible) as info:
        half_integral_biflow(c4.graph, 1, 3, 3, 2, 4, 0)
    assert info.value.cut.members == {1}
    assert info.value.cut.capacity == 2


@given(instances(max_n=4, max_m=4, max_cap=2), st.integers(0, 2), st.integers(0, 2))
def test_feasibility_complete(inst, d1, d2):
    g = inst.graph
    try:
        bf = half_integral_biflow(g, inst.s1, inst.t1, d1, inst.s2, inst.t2, d2)
    except Infeasible:
        assert not exhaustive_half_integral(g, inst.s1, inst.t1, d1, inst.s2, inst.t2, d2)
    else:
        check(bf)


@given(instances(max_n=7, max_m=12, max_cap=10, max_k=3))
def test_scaled_graph_always_routes(inst):
    x = c_k1k2_graph(inst).value
    if x == 0:
        return
    bf = half_integral_biflow(scaled_graph(inst.graph, x), inst.s1, inst.t1, inst.k1, inst.s2, inst.t2, inst.k2)
    check(bf)
