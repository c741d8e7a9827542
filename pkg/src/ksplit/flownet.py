"""Single-commodity integral flows on undirected graphs.

An edge flow is a tuple with one signed entry per edge, positive along the
edge's ``a -> b`` orientation.  Undirected capacity means ``|flow[e]| <= cap``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ksplit import _kernels
from ksplit.core import Graph, KsplitError

EdgeFlow = tuple  # tuple[int | Fraction, ...], one entry per edge
SupplyPattern = Sequence[tuple[int, int]]

__all__ = [
    "ContractViolation",
    "EdgeFlow",
    "Infeasible",
    "InfeasibilityCut",
    "SupplyPattern",
    "decompose_paths",
    "feasible_transshipment",
    "max_flow",
    "min_cut_side",
    "net_outflow",
]


class ContractViolation(KsplitError, AssertionError):
    """An internal invariant failed (a bug, not bad input)."""


@dataclass(frozen=True)
class InfeasibilityCut:
    """Vertex set whose boundary capacity is below the net supply inside it."""

    members: frozenset[int]
    capacity: int
    net_supply: int


class Infeasible(KsplitError):
    def __init__(self, cut: InfeasibilityCut):
        self.cut = cut
        super().__init__(
            f"infeasible: cut {sorted(cut.members)} has capacity {cut.capacity} < net supply {cut.net_supply}"
        )


def _arrays(graph: Graph):
    if graph.edge_count:
        arr = np.array(graph.edges, dtype=np.int64)
        return arr[:, 0] - 1, arr[:, 1] - 1, arr[:, 2]
    empty = np.zeros(0, np.int64)
    return empty, empty, empty


def _solve(graph: Graph, source: int, sink: int):
    ea, eb, cap = _arrays(graph)
    value, flow, side = _kernels.max_flow_arrays(graph.vertex_count, ea, eb, cap, source - 1, sink - 1)
    members = frozenset(int(v) + 1 for v in np.flatnonzero(side))
    return int(value), tuple(int(f) for f in flow), members


def max_flow(graph: Graph, source: int, sink: int) -> tuple[int, EdgeFlow]:
    """Maximum ``source``-``sink`` flow value and an integral net edge flow."""
    if source == sink:
        raise ValueError("source and sink must differ")
    value, flow, _ = _solve(graph, source, sink)
    return value, flow


def min_cut_side(graph: Graph, source: int, sink: int) -> frozenset[int]:
    """Source side of the minimum cut found by :func:`max_flow` (residual reachability)."""
    return _solve(graph, source, sink)[2]


def net_outflow(graph: Graph, flow: EdgeFlow) -> dict[int, int | Fraction]:
    out = {v: 0 for v in graph.vertices}
    for (a, b, _), f in zip(graph.edges, flow):
        out[a] += f
        out[b] -= f
    return out


def feasible_transshipment(graph: Graph, pattern: SupplyPattern) -> EdgeFlow:
    """Integral flow whose net outflow at each vertex matches ``pattern``.

    ``pattern`` lists ``(vertex, amount)`` pairs (positive = supply); repeated
    vertices are summed.  Raises :class:`Infeasible` carrying a witness cut.
    """
    supply: dict[int, int] = {}
    for v, amount in pattern:
        supply[v] = supply.get(v, 0) + int(amount)
    if sum(supply.values()) != 0:
        raise ValueError("supply pattern must sum to zero")
    n = graph.vertex_count
    src, snk = n + 1, n + 2
    extra = [(src, v, a) for v, a in sorted(supply.items()) if a > 0]
    extra += [(v, snk, -a) for v, a in sorted(supply.items()) if a < 0]
    aux = Graph(n + 2, graph.edges + tuple(extra))
    total = sum(a for a in supply.values() if a > 0)
    value, flow, side = _solve(aux, src, snk)
    if value < total:
        members = frozenset(v for v in side if v <= n)
        cap = sum(graph.edges[e][2] for e in graph.boundary(members))
        net = sum(supply.get(v, 0) for v in members)
        raise Infeasible(InfeasibilityCut(members, cap, net))
    return flow[: graph.edge_count]


def decompose_paths(
    graph: Graph, flow: EdgeFlow, source: int, sink: int, value: int
) -> tuple[list[tuple[tuple[int, ...], tuple[int, ...]]], int]:
    """Split an integral flow of ``value`` into ``value`` unit paths.

    Returns ``(paths, discarded_cycles)``; each path is ``(vertices, edge_ids)``
    and is simple.  Tracing always leaves a vertex through its lowest-numbered
    edge with remaining flow; cycles met on the way (and any circulation left
    after the last path) are cancelled and counted.
    """
    rem = [int(f) for f in flow]
    if any(f != g for f, g in zip(rem, flow)):
        raise ContractViolation("decompose_paths needs an integral flow")
    out = net_outflow(graph, rem)
    expected = {v: 0 for v in graph.vertices}
    if value:
        expected[source] += value
        expected[sink] -= value
    if out != expected:
        bad = sorted(v for v in graph.vertices if out[v] != expected[v])
        raise ContractViolation(f"flow does not conserve value {value} (vertices {bad})")

    incident: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for e, (a, b, _) in enumerate(graph.edges):
        incident[a].append(e)
        incident[b].append(e)

    def step(v: int):
        for e in incident[v]:
            a, b, _ = graph.edges[e]
            if a == v and rem[e] > 0:
                return e, b, 1
            if b == v and rem[e] < 0:
                return e, a, -1
        return None

    def cancel(arcs, amount):
        for e, sign in arcs:
            rem[e] -= sign * amount

    cycles = 0

    def trace(start: int, stop: int | None):
        # walk until reaching `stop`; returns (vertices, arcs) of a simple walk
        nonlocal cycles
        verts = [start]
        arcs: list[tuple[int, int]] = []
        pos = {start: 0}
        while True:
            if stop is not None and verts[-1] == stop:
                return verts, arcs
            nxt = step(verts[-1])
            if nxt is None:
                raise ContractViolation(f"flow trace stuck at vertex {verts[-1]}")
            e, w, sign = nxt
            if w in pos:
                i = pos[w]
                loop = arcs[i:] + [(e, sign)]
                cancel(loop, min(abs(rem[x]) for x, _ in loop))
                cycles += 1
                for u in verts[i + 1 :]:
                    del pos[u]
                del verts[i + 1 :], arcs[i:]
                if stop is None:
                    return None
                continue
            pos[w] = len(verts)
            verts.append(w)
            arcs.append((e, sign))

    paths = []
    for _ in range(value):
        verts, arcs = trace(source, sink)
        cancel(arcs, 1)
        paths.append((tuple(verts), tuple(e for e, _ in arcs)))
    while True:
        e = next((i for i, f in enumerate(rem) if f != 0), None)
        if e is None:
            break
        a, b, _ = graph.edges[e]
        trace(a if rem[e] > 0 else b, None)
    return paths, cycles
