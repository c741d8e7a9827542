import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import graphs, instances, load
from ksplit.core import Graph, Instance, PreconditionError
from ksplit.cuts import CaseId, build_case_graph, c_cut, c_k1k2_graph, c_k_graph, dem
from ksplit.oracle import brute_force_c_k, brute_force_c_k1k2


def c_cut_by_enumeration(caps, l):
    # try every distribution of l items over the bins
    best = Fraction(0)
    for n in itertools.product(range(l + 1), repeat=len(caps)):
        if sum(n) != l:
            continue
        used = [Fraction(u, k) for u, k in zip(caps, n) if k]
        best = max(best, min(used))
    return best


@pytest.mark.parametrize(
    "caps,l,value,packing",
    [((5,), 2, Fraction(5, 2), (2,)), ((3, 5), 2, Fraction(3), (1, 1)), ((3, 5), 3, Fraction(5, 2), (1, 2))],
)
def test_c_cut_examples(caps, l, value, packing):
    res = c_cut(caps, l)
    assert res.value == value
    assert tuple(res.packing.values()) == packing


def test_c_cut_rejects_zero_items():
    with pytest.raises(PreconditionError):
        c_cut((3,), 0)


@given(st.lists(st.integers(0, 12), min_size=1, max_size=4), st.integers(1, 5))
def test_c_cut_matches_enumeration(caps, l):
    res = c_cut(caps, l)
    assert res.value == c_cut_by_enumeration(caps, l)
    assert sum(res.packing.values()) == (l if res.value > 0 else 0)
    assert all(n * res.value <= caps[e] for e, n in res.packing.items())


def test_dem_examples(c4):
    # c4 order around the cycle: s1=1, s2=2, t1=3, t2=4
    assert dem(c4, {1}) == c4.k1
    assert dem(c4, {1, 2}) == c4.k1 + c4.k2
    assert dem(c4, {1, 3}) == 0


def test_c_k_graph_examples():
    parallel = Graph(2, ((1, 2, 3), (1, 2, 5)))
    assert c_k_graph(parallel, 1, 2, 2).value == 3
    path = Graph(3, ((1, 2, 4), (2, 3, 6)))
    res = c_k_graph(path, 1, 3, 2)
    assert res.value == 2
    assert res.witness_cut.members == {1}
    assert c_k_graph(Graph(3, ((1, 2, 4),)), 1, 3, 3).value == 0


@given(graphs(max_n=7, max_m=10, max_cap=10), st.integers(1, 4), st.data())
def test_c_k_graph_matches_cut_enumeration(g, k, data):
    s = data.draw(st.integers(1, g.vertex_count))
    t = data.draw(st.integers(1, g.vertex_count).filter(lambda v: v != s))
    res = c_k_graph(g, s, t, k)
    assert res.value == brute_force_c_k(g, s, t, k)
    # witness is an s-t cut whose packing value equals the optimum
    w = res.witness_cut
    assert (s in w.members) != (t in w.members)
    assert c_cut([g.edges[e][2] for e in w.boundary], k).value == res.value


def test_case_graphs(c4, disjoint46):
    sep1 = build_case_graph(c4, CaseId.SEP1)
    assert sep1.graph.edge_count == 5
    assert sep1.big_m_edges == ((2, 4, 3),)
    assert (sep1.source, sep1.sink, sep1.items) == (1, 3, 1)
    assert build_case_graph(c4.with_k(1, 0), CaseId.SEP2).skipped
    cross = build_case_graph(disjoint46, CaseId.JOINT_CROSS)
    m = cross.big_m
    assert m == 2 * 6 + 1
    assert cross.big_m_edges == ((1, 4, m), (3, 2, m))
    par = build_case_graph(disjoint46, "JOINT_PARALLEL")
    assert par.big_m_edges == ((1, 3, m), (2, 4, m))
    assert par.items == 2


def test_c_k1k2_examples(c4, disjoint46):
    assert c_k1k2_graph(disjoint46).value == 4
    assert c_k1k2_graph(disjoint46.with_k(2, 2)).value == 2
    res = c_k1k2_graph(c4)
    assert res.value == 1
    assert res.witness_cut.demand >= 1
    with pytest.raises(PreconditionError):
        c_k1k2_graph(c4.with_k(0, 0))


@given(instances(max_n=7, max_m=10, max_cap=8, max_k=3, positive_k=False).filter(lambda i: i.k1 + i.k2 > 0))
def test_c_k1k2_matches_enumeration(inst):
    res = c_k1k2_graph(inst)
    value, _ = brute_force_c_k1k2(inst)
    assert res.value == value
    w = res.witness_cut
    assert w.demand == dem(inst, w.members) > 0
    assert c_cut([inst.graph.edges[e][2] for e in w.boundary], w.demand).value == value


@given(instances(max_n=6, max_m=9, max_k=3), st.sampled_from([1, 2]))
def test_monotone_in_k(inst, which):
    more = inst.with_k(inst.k1 + (which == 1), inst.k2 + (which == 2))
    assert c_k1k2_graph(more).value <= c_k1k2_graph(inst).value


@given(instances(max_n=6, max_m=9, max_k=3), st.integers(2, 5))
def test_scaling(inst, m):
    scaled = inst.with_graph(inst.graph.with_capacities(u * m for u in inst.graph.capacities))
    assert c_k1k2_graph(scaled).value == m * c_k1k2_graph(inst).value


@given(instances(max_n=6, max_m=9, max_k=3))
def test_doubling_split_counts_at_most_halves_value(inst):
    doubled = inst.with_k(2 * inst.k1, 2 * inst.k2)
    assert 2 * c_k1k2_graph(doubled).value >= c_k1k2_graph(inst).value


def test_parallel_fixture_values():
    inst = load("parallel35.biflow")
    assert c_k1k2_graph(inst).value == 3
    assert c_k1k2_graph(inst.with_k(1, 1)).value == 5
