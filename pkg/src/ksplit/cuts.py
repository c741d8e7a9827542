"""Minimum k-cut values for one and two commodities.

``c_cut`` solves the per-cut packing problem (largest item size ``x`` such
that ``l`` items of size ``x`` fit into bins with the boundary capacities).
``c_k_graph`` minimises it over all s-t cuts by parametric search over the
finitely many candidates ``u_e / j`` with a max-flow feasibility probe, and
``c_k1k2_graph`` reduces the two-commodity value to four such searches on
auxiliary graphs where big-M edges pin terminal pairs to the same side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ksplit.core import Cut, Graph, Instance, PreconditionError
from ksplit.flownet import ContractViolation, max_flow, min_cut_side

__all__ = [
    "AuxCase",
    "CaseId",
    "CutValue",
    "build_case_graph",
    "c_cut",
    "c_k1k2_graph",
    "c_k_graph",
    "candidates",
    "dem",
    "floor_div",
    "separates",
]


def floor_div(u: int, x: Fraction) -> int:
    """``floor(u / x)`` for a positive rational ``x``."""
    return (u * x.denominator) // x.numerator


def ceil_div(u: int, x: Fraction) -> int:
    return -((-u * x.denominator) // x.numerator)


@dataclass(frozen=True)
class CutValue:
    """A packing optimum: the value, the cut achieving it and the item counts.

    ``packing`` maps edge id (or bin index for :func:`c_cut`) to ``n(e)``.
    """

    value: Fraction
    witness_cut: Optional[Cut] = None
    packing: dict[int, int] = field(default_factory=dict)


def separates(members: Iterable[int] | frozenset[int], a: int, b: int) -> bool:
    inside = members if isinstance(members, (set, frozenset)) else set(members)
    return (a in inside) != (b in inside)


def dem(instance: Instance, members: Iterable[int]) -> int:
    """Number of paths that must cross the boundary of ``members``.

    A commodity contributes its split count when exactly one of its two
    terminals lies inside the set.
    """
    inside = frozenset(members)
    total = 0
    if separates(inside, instance.s1, instance.t1):
        total += instance.k1
    if separates(inside, instance.s2, instance.t2):
        total += instance.k2
    return total


def candidates(caps: Iterable[int], l: int) -> list[Fraction]:
    """Sorted distinct item sizes ``u / j`` with ``u > 0`` and ``1 <= j <= l``."""
    return sorted({Fraction(u, j) for u in set(caps) if u > 0 for j in range(1, l + 1)})


def _packs(caps: Sequence[int], x: Fraction, l: int) -> bool:
    return sum(floor_div(u, x) for u in caps) >= l


def _packing(caps: Sequence[int], x: Fraction, l: int) -> list[int]:
    counts = []
    left = l
    for u in caps:
        n = min(floor_div(u, x), left) if x > 0 else 0
        counts.append(n)
        left -= n
    return counts


def c_cut(boundary_caps: Sequence[int], l: int) -> CutValue:
    """Largest ``x`` such that ``l`` items of size ``x`` pack into the given bins."""
    if l < 1:
        raise PreconditionError("item count l must be positive")
    caps = list(boundary_caps)
    cands = candidates(caps, l)
    lo, hi = 0, len(cands) - 1
    best = Fraction(0)
    # feasibility is monotone: small items always pack if large ones do
    while lo <= hi:
        mid = (lo + hi) // 2
        if _packs(caps, cands[mid], l):
            best = cands[mid]
            lo = mid + 1
        else:
            hi = mid - 1
    return CutValue(best, None, dict(enumerate(_packing(caps, best, l))))


def _scaled(graph: Graph, x: Fraction) -> Graph:
    return graph.with_capacities(floor_div(u, x) for u in graph.capacities)


def c_k_graph(graph: Graph, s: int, t: int, k: int, instance: Optional[Instance] = None) -> CutValue:
    """Minimum ``k``-cut value between ``s`` and ``t``.

    The witness is a minimum cut of the graph with capacities
    ``floor(u_e / x')`` for ``x'`` just above the optimum; any such cut has
    packing value exactly the optimum.  ``instance`` (optional) is only used to
    fill in the witness' demand.
    """
    if s == t:
        raise ValueError("s and t must differ")
    if k < 1:
        raise PreconditionError("k must be positive")
    cands = candidates(graph.capacities, k)
    if not cands or max_flow(graph, s, t)[0] == 0:
        # no positive-capacity s-t path: value 0, witness is s's component
        side = min_cut_side(graph, s, t)
        return _cut_value(graph, Fraction(0), side, k, instance)
    lo, hi = 0, len(cands) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        if max_flow(_scaled(graph, cands[mid]), s, t)[0] >= k:
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        raise ContractViolation("smallest candidate must be feasible on a connected graph")
    x = cands[best]
    above = graph.with_capacities(max(ceil_div(u, x) - 1, 0) for u in graph.capacities)
    side = min_cut_side(above, s, t)
    return _cut_value(graph, x, side, k, instance)


def _cut_value(graph: Graph, x: Fraction, side: frozenset[int], l: int, instance: Optional[Instance]) -> CutValue:
    boundary = graph.boundary(side)
    caps = [graph.edges[e][2] for e in boundary]
    demand = dem(instance, side) if instance is not None else l
    return CutValue(x, Cut(side, boundary, demand), dict(zip(boundary, _packing(caps, x, l))))


class CaseId(str, enum.Enum):
    SEP1 = "SEP1"
    SEP2 = "SEP2"
    JOINT_PARALLEL = "JOINT_PARALLEL"
    JOINT_CROSS = "JOINT_CROSS"


@dataclass(frozen=True)
class AuxCase:
    """Auxiliary single-commodity problem for one family of cuts."""

    case: CaseId
    graph: Optional[Graph]
    big_m_edges: tuple[tuple[int, int, int], ...]
    source: int
    sink: int
    items: int
    big_m: int

    @property
    def skipped(self) -> bool:
        return self.items == 0


def build_case_graph(instance: Instance, case: CaseId | str) -> AuxCase:
    """Attach big-M edges so only cuts of ``case``'s separation pattern stay cheap.

    Big-M edges whose endpoints coincide (shared terminals) are omitted.
    """
    case = CaseId(case)
    i = instance
    big_m = (i.k1 + i.k2) * i.graph.max_capacity + 1
    wiring = {
        CaseId.SEP1: ([(i.s2, i.t2)], i.s1, i.t1, i.k1),
        CaseId.SEP2: ([(i.s1, i.t1)], i.s2, i.t2, i.k2),
        CaseId.JOINT_PARALLEL: ([(i.s1, i.s2), (i.t1, i.t2)], i.s1, i.t1, i.k1 + i.k2),
        CaseId.JOINT_CROSS: ([(i.s1, i.t2), (i.s2, i.t1)], i.s1, i.t1, i.k1 + i.k2),
    }[case]
    pairs, s, t, l = wiring
    extra = tuple((a, b, big_m) for a, b in pairs if a != b)
    graph = i.graph.with_extra_edges(extra) if l > 0 else None
    return AuxCase(case, graph, extra, s, t, l, big_m)


def c_k1k2_graph(instance: Instance, *, with_cases: bool = False):
    """Two-commodity minimum cut value over all cuts with nonzero demand.

    Returns a :class:`CutValue`; with ``with_cases=True`` also a dict of the
    per-case values (``None`` for skipped or empty cases).
    """
    if instance.k1 + instance.k2 < 1:
        raise PreconditionError("k1 + k2 must be at least 1")
    limit = instance.graph.max_capacity
    best: Optional[CutValue] = None
    per_case: dict[str, Optional[Fraction]] = {}
    for case in CaseId:
        aux = build_case_graph(instance, case)
        if aux.skipped:
            per_case[case.value] = None
            continue
        res = c_k_graph(aux.graph, aux.source, aux.sink, aux.items)
        if res.value > limit:
            per_case[case.value] = None
            continue
        per_case[case.value] = res.value
        if best is None or res.value < best.value:
            best = res
    if best is None:
        raise ContractViolation("no auxiliary case produced a cut")
    # map the witness back onto the original graph
    side = best.witness_cut.members
    boundary = instance.graph.boundary(side)
    demand = dem(instance, side)
    caps = [instance.graph.edges[e][2] for e in boundary]
    result = CutValue(best.value, Cut(side, boundary, demand), dict(zip(boundary, _packing(caps, best.value, demand))))
    return (result, per_case) if with_cases else result
