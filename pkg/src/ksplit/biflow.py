"""Half-integral two-commodity flow from two single-commodity transshipments.

With ``F`` routing both commodities as one (supplies at ``s1, s2``) and ``G``
routing commodity 2 backwards (supplies at ``s1, t2``), the pair
``f1 = (F + G) / 2`` and ``f2 = (F - G) / 2`` is a two-commodity flow with
``|f1| + |f2| = max(|F|, |G|)`` on every edge.  Both transshipments exist
whenever the cut condition holds, so this is constructive and half-integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ksplit.core import Graph
from ksplit.flownet import EdgeFlow, feasible_transshipment, net_outflow

__all__ = ["EdgeBiFlow", "half_integral_biflow"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EdgeBiFlow:
    graph: Graph
    f1: tuple[Fraction, ...]
    f2: tuple[Fraction, ...]
    s1: int
    t1: int
    d1: int
    s2: int
    t2: int
    d2: int
    # integral transshipments the pair was built from
    combined: EdgeFlow = ()
    crossed: EdgeFlow = ()

    def doubled(self, commodity: int) -> tuple[int, ...]:
        """``2 * f_i`` as integers (exact, since ``f_i`` is half-integral)."""
        f = self.f1 if commodity == 1 else self.f2
        return tuple(int(2 * x) for x in f)

    def violations(self) -> list[str]:
        """Human-readable list of broken invariants (empty when valid)."""
        problems = []
        for e, ((a, b, cap), x, y) in enumerate(zip(self.graph.edges, self.f1, self.f2)):
            if abs(x) + abs(y) > cap:
                problems.append(f"edge {e}: |f1|+|f2| = {abs(x) + abs(y)} > {cap}")
            if (2 * x).denominator != 1 or (2 * y).denominator != 1:
                problems.append(f"edge {e}: not half-integral")
        for f, s, t, d, name in ((self.f1, self.s1, self.t1, self.d1, "f1"), (self.f2, self.s2, self.t2, self.d2, "f2")):
            out = net_outflow(self.graph, f)
            want = {v: 0 for v in self.graph.vertices}
            want[s] += d
            want[t] -= d
            bad = sorted(v for v in out if out[v] != want[v])
            if bad:
                problems.append(f"{name} does not conserve at {bad}")
        return problems


def half_integral_biflow(graph: Graph, s1: int, t1: int, d1: int, s2: int, t2: int, d2: int) -> EdgeBiFlow:
    """Route ``d1`` units ``s1 -> t1`` and ``d2`` units ``s2 -> t2`` half-integrally.

    Raises:
        ksplit.flownet.Infeasible: if either transshipment fails; its cut
            violates the two-commodity cut condition.
    """
    combined = feasible_transshipment(graph, [(s1, d1), (s2, d2), (t1, -d1), (t2, -d2)])
    crossed = feasible_transshipment(graph, [(s1, d1), (t2, d2), (t1, -d1), (s2, -d2)])
    f1 = tuple((F + G) * HALF for F, G in zip(combined, crossed))
    f2 = tuple((F - G) * HALF for F, G in zip(combined, crossed))
    return EdgeBiFlow(graph, f1, f2, s1, t1, d1, s2, t2, d2, combined, crossed)
