"""Path-level totally uniform flows built from the two-commodity cut value.

Pipeline: ``x = c_{k1,k2}(G)``; scale capacities to ``floor(u_e / x)``; route
demands ``(k1, k2)`` half-integrally; double and decompose into ``2 k_i`` unit
paths; give each path ``x / 2`` on the original graph.  Keeping half of the
paths yields the 1/2-approximation, and converting its per-path value into a
concurrent throughput gives the 1/4-approximation for matched demand ratios.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ksplit.biflow import EdgeBiFlow, half_integral_biflow
from ksplit.core import Graph, Instance, PreconditionError
from ksplit.cuts import CutValue, c_k1k2_graph, c_k_graph, floor_div
from ksplit.flownet import ContractViolation, Infeasible, decompose_paths, max_flow

__all__ = [
    "ConcurrentResult",
    "DoubleFlowResult",
    "EvenKCertificate",
    "HalfApproxResult",
    "PathFlow",
    "SplittableFlow",
    "Uniformity",
    "concurrent_quarter",
    "even_k_exact",
    "scaled_graph",
    "tu_double_flow",
    "tu_half_approx",
]


class Uniformity(str, enum.Enum):
    NONE = "none"
    BI = "bi"
    TOTAL = "total"


@dataclass(frozen=True)
class PathFlow:
    commodity: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class SplittableFlow:
    """``k1`` commodity-1 and ``k2`` commodity-2 paths.

    A flow with no paths at all is the explicit empty (all-zero) flow; it is
    used when no positive uniform value exists and paths may not even exist.
    """

    paths: tuple[PathFlow, ...]
    k1: int
    k2: int
    uniformity: Uniformity = Uniformity.NONE

    @classmethod
    def empty(cls, k1: int, k2: int, uniformity: Uniformity = Uniformity.TOTAL) -> "SplittableFlow":
        return cls((), k1, k2, uniformity)

    @property
    def is_empty(self) -> bool:
        return not self.paths

    def commodity_paths(self, commodity: int) -> tuple[PathFlow, ...]:
        return tuple(p for p in self.paths if p.commodity == commodity)

    def commodity_total(self, commodity: int) -> Fraction:
        return sum((p.value for p in self.paths if p.commodity == commodity), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum((p.value for p in self.paths), Fraction(0))

    def edge_loads(self, edge_count: int) -> list[Fraction]:
        loads = [Fraction(0)] * edge_count
        for p in self.paths:
            for e in p.edges:
                loads[e] += p.value
        return loads


@dataclass(frozen=True)
class DoubleFlowResult:
    x: Fraction
    flow: SplittableFlow
    cut: Optional[CutValue] = None
    biflow: Optional[EdgeBiFlow] = None
    discarded_cycles: int = 0


@dataclass(frozen=True)
class HalfApproxResult:
    x_per_path: Fraction
    flow: SplittableFlow
    upper_bound: Fraction
    c_value: Fraction
    reduced: bool = False

    @property
    def total(self) -> Fraction:
        return self.flow.total


@dataclass(frozen=True)
class EvenKCertificate:
    applicable: bool
    c_full: Fraction
    c_half: Fraction
    flow: Optional[SplittableFlow] = None

    @property
    def total(self) -> Optional[Fraction]:
        return self.flow.total if self.flow is not None else None


@dataclass(frozen=True)
class ConcurrentResult:
    lam: Fraction
    flow: SplittableFlow
    d1: Fraction
    d2: Fraction
    half: Optional[HalfApproxResult] = field(default=None, repr=False)


def scaled_graph(graph: Graph, x: Fraction) -> Graph:
    """Same topology with capacities ``floor(u_e / x)``."""
    x = Fraction(x)
    if x <= 0:
        raise PreconditionError("scaling factor must be positive")
    return graph.with_capacities(floor_div(u, x) for u in graph.capacities)


def _paths(graph: Graph, flow, source: int, sink: int, count: int, commodity: int, value: Fraction):
    paths, cycles = decompose_paths(graph, flow, source, sink, count)
    return [PathFlow(commodity, verts, edges, value) for verts, edges in paths], cycles


def tu_double_flow(instance: Instance) -> DoubleFlowResult:
    """Totally uniform ``(2 k1, 2 k2)``-splittable flow of value ``(k1 + k2) c``."""
    cut = c_k1k2_graph(instance)
    x = cut.value
    k1, k2 = instance.k1, instance.k2
    if x == 0:
        return DoubleFlowResult(x, SplittableFlow.empty(2 * k1, 2 * k2), cut)
    g = scaled_graph(instance.graph, x)
    try:
        bf = half_integral_biflow(g, instance.s1, instance.t1, k1, instance.s2, instance.t2, k2)
    except Infeasible as exc:
        raise ContractViolation(f"scaled graph violates the cut condition: {exc}") from exc
    half = x / 2
    p1, c1 = _paths(g, bf.doubled(1), instance.s1, instance.t1, 2 * k1, 1, half)
    p2, c2 = _paths(g, bf.doubled(2), instance.s2, instance.t2, 2 * k2, 2, half)
    flow = SplittableFlow(tuple(p1 + p2), 2 * k1, 2 * k2, Uniformity.TOTAL)
    return DoubleFlowResult(x, flow, cut, bf, c1 + c2)


def _single_commodity(instance: Instance, commodity: int) -> HalfApproxResult:
    # one split count is zero: uniform k-splittable single-commodity flow is exact
    s, t = instance.pair(commodity)
    k = instance.k(commodity)
    cut = c_k_graph(instance.graph, s, t, k, instance)
    x = cut.value
    if x == 0:
        return HalfApproxResult(x, SplittableFlow.empty(instance.k1, instance.k2), Fraction(0), x, True)
    g = scaled_graph(instance.graph, x)
    value, flow = max_flow(g, s, t)
    if value < k:
        raise ContractViolation("scaled graph carries fewer than k units")
    paths, _ = _paths(g, flow, s, t, value, commodity, x)
    fl = SplittableFlow(tuple(paths[:k]), instance.k1, instance.k2, Uniformity.TOTAL)
    return HalfApproxResult(x, fl, k * x, x, True)


def tu_half_approx(instance: Instance) -> HalfApproxResult:
    """Totally uniform ``(k1, k2)``-splittable flow with at least half the optimum.

    Keeps the first ``k_i`` paths of each commodity from :func:`tu_double_flow`.
    If one split count is zero the problem is single-commodity and is solved
    exactly instead.
    """
    if instance.k1 + instance.k2 < 1:
        raise PreconditionError("k1 + k2 must be at least 1")
    if instance.k1 == 0 or instance.k2 == 0:
        return _single_commodity(instance, 1 if instance.k1 else 2)
    res = tu_double_flow(instance)
    c = res.x
    k1, k2 = instance.k1, instance.k2
    bound = (k1 + k2) * c
    if c == 0:
        return HalfApproxResult(c, SplittableFlow.empty(k1, k2), bound, c)
    kept = res.flow.commodity_paths(1)[:k1] + res.flow.commodity_paths(2)[:k2]
    return HalfApproxResult(c / 2, SplittableFlow(kept, k1, k2, Uniformity.TOTAL), bound, c)


def even_k_exact(instance: Instance) -> EvenKCertificate:
    """Exact optimum for even split counts when ``2 c_{k1,k2} = c_{k1/2,k2/2}``."""
    k1, k2 = instance.k1, instance.k2
    if k1 < 2 or k2 < 2 or k1 % 2 or k2 % 2:
        raise PreconditionError("even_k_exact needs even k1, k2 >= 2")
    c_full = c_k1k2_graph(instance).value
    halved = instance.with_k(k1 // 2, k2 // 2)
    c_half = c_k1k2_graph(halved).value
    if 2 * c_full != c_half:
        return EvenKCertificate(False, c_full, c_half)
    res = tu_double_flow(halved)
    if res.flow.is_empty:
        return EvenKCertificate(True, c_full, c_half, SplittableFlow.empty(k1, k2))
    return EvenKCertificate(True, c_full, c_half, SplittableFlow(res.flow.paths, k1, k2, Uniformity.TOTAL))


def concurrent_quarter(instance: Instance, d1: Fraction, d2: Fraction) -> ConcurrentResult:
    """Concurrent throughput within a factor 4 of optimal for ``d1 / d2 = k1 / k2``."""
    d1, d2 = Fraction(d1), Fraction(d2)
    k1, k2 = instance.k1, instance.k2
    if d1 <= 0 or d2 <= 0:
        raise PreconditionError("demands must be positive")
    if k1 < 1 or k2 < 1:
        raise PreconditionError("concurrent approximation needs k1, k2 >= 1")
    if d1 * k2 != d2 * k1:
        raise PreconditionError("demand ratio must equal k1/k2")
    half = tu_half_approx(instance)
    lam = k1 * half.x_per_path / d1
    return ConcurrentResult(lam, half.flow, d1, d2, half)
