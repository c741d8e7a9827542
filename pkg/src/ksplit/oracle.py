"""Brute-force exact solvers for desk-sized instances.

Everything here works from simple-path catalogues and explicit cut
enumeration.  It shares no code with the cut/flow pipeline it checks beyond
the data model and the per-cut helpers of :mod:`ksplit.cuts`.

Path selections are multisets of simple paths.  Search is exhaustive with
branch-and-bound pruning: adding a path to a selection can only shrink the
achievable per-path value, so a partial selection's value bounds all of its
completions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from ksplit import _kernels
from ksplit.approx import PathFlow, SplittableFlow, Uniformity
from ksplit.core import Graph, Instance, KsplitError, PreconditionError
from ksplit.cuts import c_cut, dem, separates

__all__ = [
    "UNBOUNDED",
    "BiUniformResult",
    "ConcurrentOptimum",
    "CutBoundAssignment",
    "OracleLimitError",
    "OracleLimits",
    "PathCatalog",
    "TotallyUniformResult",
    "VerifyReport",
    "brute_force_c_k",
    "brute_force_c_k1k2",
    "catalog",
    "cut_bound",
    "enumerate_cuts",
    "enumerate_paths",
    "exact_biuniform",
    "exact_concurrent",
    "exact_totally_uniform",
    "two_cut_bound",
    "verify_flow",
]


class OracleLimitError(KsplitError):
    """The instance is too large for exhaustive search."""


class _Unbounded:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


@dataclass(frozen=True)
class OracleLimits:
    max_paths: int = 10_000
    max_selections: int = 2_000_000


@dataclass(frozen=True)
class PathCatalog:
    """All simple ``s_i``-``t_i`` paths per commodity, as ``(vertices, edge_ids)``."""

    paths1: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    paths2: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    truncated: bool = False

    def of(self, commodity: int):
        return self.paths1 if commodity == 1 else self.paths2


def enumerate_paths(graph: Graph, s: int, t: int, limit: int = 10_000):
    """All simple ``s``-``t`` paths in lexicographic order of vertex sequence.

    Parallel edges give distinct paths (ordered by edge id).

    Raises:
        OracleLimitError: if more than ``limit`` paths exist.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    nbrs: dict[int, list[tuple[int, int]]] = {v: [] for v in graph.vertices}
    for e, (a, b, _) in enumerate(graph.edges):
        nbrs[a].append((b, e))
        nbrs[b].append((a, e))
    for v in nbrs:
        nbrs[v].sort()
    out = []
    verts = [s]
    edges: list[int] = []
    on_path = {s}

    def walk(v: int) -> None:
        if v == t:
            out.append((tuple(verts), tuple(edges)))
            if len(out) > limit:
                raise OracleLimitError(f"instance too large for oracle: more than {limit} simple {s}-{t} paths")
            return
        for w, e in nbrs[v]:
            if w in on_path:
                continue
            on_path.add(w)
            verts.append(w)
            edges.append(e)
            walk(w)
            edges.pop()
            verts.pop()
            on_path.discard(w)

    walk(s)
    return tuple(out)


def catalog(instance: Instance, limits: OracleLimits = OracleLimits()) -> PathCatalog:
    g = instance.graph
    p1 = enumerate_paths(g, instance.s1, instance.t1, limits.max_paths) if instance.k1 else ()
    p2 = enumerate_paths(g, instance.s2, instance.t2, limits.max_paths) if instance.k2 else ()
    return PathCatalog(p1, p2)


# --------------------------------------------------------------------------
# cut enumeration


def enumerate_cuts(graph: Graph) -> Iterator[tuple[frozenset[int], tuple[int, ...]]]:
    """Every vertex set not containing the last vertex, with its boundary.

    Complements have identical boundaries, so this covers all cuts once.
    """
    n = graph.vertex_count
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    if graph.edge_count:
        arr = np.array(graph.edges, dtype=np.int64)
        bnd = _kernels.boundary_matrix(n, arr[:, 0] - 1, arr[:, 1] - 1, masks)
    else:
        bnd = np.zeros((len(masks), 0), bool)
    for mask, row in zip(masks.tolist(), bnd):
        members = frozenset(v + 1 for v in range(n) if mask >> v & 1)
        yield members, tuple(np.flatnonzero(row).tolist())


def brute_force_c_k(graph: Graph, s: int, t: int, k: int) -> Fraction:
    """``min`` over explicitly enumerated ``s``-``t`` cuts of the per-cut packing value."""
    best = None
    for members, boundary in enumerate_cuts(graph):
        if separates(members, s, t):
            v = c_cut([graph.edges[e][2] for e in boundary], k).value
            best = v if best is None else min(best, v)
    return best


def brute_force_c_k1k2(instance: Instance) -> tuple[Fraction, frozenset[int]]:
    """``min`` over all cuts with nonzero demand; returns ``(value, minimising set)``."""
    best = None
    arg = frozenset()
    g = instance.graph
    for members, boundary in enumerate_cuts(g):
        d = dem(instance, members)
        if d == 0:
            continue
        v = c_cut([g.edges[e][2] for e in boundary], d).value
        if best is None or v < best:
            best, arg = v, members
    return best, arg


# --------------------------------------------------------------------------
# uniform search


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise OracleLimitError(f"instance too large for oracle: more than {self.limit} selections explored")


def _may_improve(approx: float, best, gap: float) -> bool:
    """Float screen that never discards a strict improvement.

    ``gap`` is a lower bound on the difference between two distinct exact
    candidate values; float error is far below it for these tiny systems.
    """
    if best is None:
        return True
    err = 1e-9 * max(1.0, abs(float(best)))
    if gap <= 4 * err:
        return True
    return approx > float(best) + gap - err


def _max_min_ratio(caps, slots, budget):
    """Maximise ``min_e u_e / W_e`` over path multisets.

    ``slots`` is a list of ``(paths, weight)`` groups: ``count`` picks from
    ``paths`` (edge-id tuples), each adding integer ``weight`` to ``W_e`` on
    its edges.  Returns ``(num, den, picks)`` with ``den == 0`` meaning no
    edge is loaded, or ``None`` if some group has no paths.
    """
    flat = []
    for gi, (paths, weight, count) in enumerate(slots):
        if count and not paths:
            return None
        flat.extend([(paths, weight, gi)] * count)
    if not flat:
        return 1, 0, []
    m = len(caps)
    load = [0] * m
    best = [-1, 1, None]
    picks: list[int] = []

    def rec(depth: int, start: int, num: int, den: int) -> None:
        budget.spend()
        if depth == len(flat):
            if best[2] is None or num * best[1] > best[0] * den:
                best[0], best[1], best[2] = num, den, list(picks)
            return
        paths, weight, gi = flat[depth]
        nxt_same = depth + 1 < len(flat) and flat[depth + 1][2] == gi
        for idx in range(start, len(paths)):
            nn, nd = num, den
            for e in paths[idx]:
                w = load[e] + weight
                u = caps[e]
                # compare u / w < nn / nd
                if nd == 0 or u * nd < nn * w:
                    nn, nd = u, w
            if best[2] is not None and best[1] != 0 and nn * best[1] <= best[0] * nd:
                continue
            for e in paths[idx]:
                load[e] += weight
            picks.append(idx)
            rec(depth + 1, idx if nxt_same else 0, nn, nd)
            picks.pop()
            for e in paths[idx]:
                load[e] -= weight

    rec(0, 0, 1, 0)
    return best[0], best[1], best[2]


def _split_picks(slots, picks):
    out = []
    i = 0
    for paths, _, count in slots:
        out.append(picks[i : i + count])
        i += count
    return out


@dataclass(frozen=True)
class TotallyUniformResult:
    x: Fraction
    flow: SplittableFlow

    @property
    def total(self) -> Fraction:
        return self.flow.total


def _selection_flow(instance, cat, picks1, picks2, v1, v2, uniformity) -> SplittableFlow:
    paths = [PathFlow(1, *cat.paths1[i], v1) for i in picks1]
    paths += [PathFlow(2, *cat.paths2[i], v2) for i in picks2]
    return SplittableFlow(tuple(paths), instance.k1, instance.k2, uniformity)


def _tu_search(instance: Instance, cat: PathCatalog, w1: int, w2: int, limits: OracleLimits):
    caps = instance.graph.capacities
    groups = []
    for paths, w, k in ((cat.paths1, w1, instance.k1), (cat.paths2, w2, instance.k2)):
        groups.append(([p[1] for p in paths], w, k if paths else 0))
    res = _max_min_ratio(caps, groups, _Budget(limits.max_selections))
    num, den, picks = res
    p1, p2 = _split_picks(groups, picks)
    empty1 = instance.k1 > 0 and not cat.paths1
    empty2 = instance.k2 > 0 and not cat.paths2
    if empty1 or empty2:
        # a commodity with no route forces its (and hence every) value to 0
        return Fraction(0), [], []
    if den == 0:
        raise KsplitError("unloaded selection: instance has no paths to choose")
    return Fraction(num, den), p1, p2


def exact_totally_uniform(instance: Instance, limits: OracleLimits = OracleLimits()) -> TotallyUniformResult:
    """Largest common per-path value over all ``(k1, k2)`` path multisets."""
    if instance.k1 + instance.k2 < 1:
        raise PreconditionError("k1 + k2 must be at least 1")
    cat = catalog(instance, limits)
    x, p1, p2 = _tu_search(instance, cat, 1, 1, limits)
    if not p1 and not p2:
        return TotallyUniformResult(x, SplittableFlow.empty(instance.k1, instance.k2))
    return TotallyUniformResult(x, _selection_flow(instance, cat, p1, p2, x, x, Uniformity.TOTAL))


# --------------------------------------------------------------------------
# bi-uniform


def _lp2(rows: Iterable[tuple[int, int, int]], exact: bool = True):
    """``max x + y`` s.t. ``a x + b y <= u`` for each row, ``x, y >= 0``.

    Every variable must appear with a positive coefficient in some row.  With
    ``exact=False`` the same vertex enumeration runs in floats (for pruning).
    """
    num = Fraction if exact else float
    rows = list(rows)
    zero = num(0)
    pts = [(min(num(u) / a for a, b, u in rows if a > 0), zero), (zero, min(num(u) / b for a, b, u in rows if b > 0))]
    for (a1, b1, u1), (a2, b2, u2) in itertools.combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det:
            x = num(u1 * b2 - u2 * b1) / det
            y = num(a1 * u2 - a2 * u1) / det
            if x >= 0 and y >= 0:
                pts.append((x, y))
    slack = 0 if exact else 1e-9
    best = (zero, zero)
    for x, y in pts:
        if x + y > best[0] + best[1] and all(a * x + b * y <= u + slack for a, b, u in rows):
            best = (x, y)
    return best


@dataclass(frozen=True)
class BiUniformResult:
    x: Fraction
    y: Fraction
    flow: SplittableFlow

    @property
    def value(self) -> Fraction:
        return self.x + self.y


def exact_biuniform(instance: Instance, limits: OracleLimits = OracleLimits()) -> BiUniformResult:
    """Largest ``x + y`` with per-path values ``x`` (commodity 1) and ``y`` (commodity 2)."""
    if instance.k1 + instance.k2 < 1:
        raise PreconditionError("k1 + k2 must be at least 1")
    cat = catalog(instance, limits)
    budget = _Budget(limits.max_selections)
    caps = instance.graph.capacities
    k1 = instance.k1 if cat.paths1 else 0
    k2 = instance.k2 if cat.paths2 else 0
    e1 = [p[1] for p in cat.paths1]
    e2 = [p[1] for p in cat.paths2]

    def alone(paths, k):
        if not k:
            return Fraction(0)
        num, den, _ = _max_min_ratio(caps, [(paths, 1, k)], budget)
        return Fraction(num, den)

    y_cap = alone(e2, k2)
    # vertex values of the 2-variable LP have denominators <= K^2 (loads are <= K)
    K = max(k1, k2, 1)
    gap = 1.0 / K**4
    m = len(caps)
    l1 = [0] * m
    l2 = [0] * m
    best: list = [None, None, None]  # value, (x, y), (picks1, picks2)
    picks1: list[int] = []
    picks2: list[int] = []

    def rows_of(extra=()) -> list[tuple[int, int, int]]:
        rows = [(l1[e], l2[e] + (e in extra), caps[e]) for e in range(m) if l1[e] or l2[e] or e in extra]
        if k1 == 0:
            rows.append((1, 0, 0))
        if k2 == 0:
            rows.append((0, 1, 0))
        return rows

    def leaf() -> None:
        rows = rows_of()
        if best[0] is not None:
            fx, fy = _lp2(rows, exact=False)
            if not _may_improve(fx + fy, best[0], gap):
                return
        x, y = _lp2(rows)
        if best[0] is None or x + y > best[0]:
            best[0], best[1], best[2] = x + y, (x, y), (list(picks1), list(picks2))

    def partial(load, path_edges) -> Fraction:
        return min(Fraction(caps[e], load[e] + 1) for e in path_edges)

    def rec2(depth: int, start: int) -> None:
        budget.spend()
        if depth == k2:
            leaf()
            return
        for idx in range(start, len(e2)):
            if best[0] is not None:
                # loads only grow, so the relaxation with this path added bounds every completion
                fx, fy = _lp2(rows_of(frozenset(e2[idx])), exact=False)
                if not _may_improve(fx + fy, best[0], gap):
                    continue
            for e in e2[idx]:
                l2[e] += 1
            picks2.append(idx)
            rec2(depth + 1, idx)
            picks2.pop()
            for e in e2[idx]:
                l2[e] -= 1

    def rec1(depth: int, start: int, xb) -> None:
        budget.spend()
        if depth == k1:
            rec2(0, 0)
            return
        for idx in range(start, len(e1)):
            xv = partial(l1, e1[idx])
            if xb is not None:
                xv = min(xv, xb)
            if best[0] is not None and xv + y_cap <= best[0]:
                continue
            for e in e1[idx]:
                l1[e] += 1
            picks1.append(idx)
            rec1(depth + 1, idx, xv)
            picks1.pop()
            for e in e1[idx]:
                l1[e] -= 1

    if k1 == 0 and k2 == 0:
        return BiUniformResult(Fraction(0), Fraction(0), SplittableFlow.empty(instance.k1, instance.k2, Uniformity.BI))
    rec1(0, 0, None)
    x, y = best[1]
    if k1 == 0:
        x = Fraction(0)
    if k2 == 0:
        y = Fraction(0)
    p1, p2 = best[2]
    flow = _selection_flow(instance, cat, p1, p2, x, y, Uniformity.BI)
    return BiUniformResult(x, y, flow)


# --------------------------------------------------------------------------
# concurrent


def _simplex_max(c, A, b, exact: bool = True):
    """``max c.x`` s.t. ``A x <= b``, ``x >= 0`` with ``b >= 0`` (origin feasible).

    Dense tableau with Bland's rule, in exact rationals or (``exact=False``)
    floats.  Returns ``(value, x)``.
    """
    num = Fraction if exact else float
    tol = 0 if exact else 1e-12
    m, n = len(A), len(c)
    T = [[num(v) for v in row] + [num(int(i == j)) for j in range(m)] + [num(b[i])] for i, row in enumerate(A)]
    z = [-num(v) for v in c] + [num(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        enter = next((j for j in range(width) if z[j] < -tol), None)
        if enter is None:
            break
        leave = None
        best_ratio = None
        for i in range(m):
            if T[i][enter] > tol:
                ratio = T[i][-1] / T[i][enter]
                if leave is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[leave]):
                    leave, best_ratio = i, ratio
        if leave is None:
            raise KsplitError("unbounded LP")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * p for a, p in zip(T[i], T[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [a - f * p for a, p in zip(z, T[leave])]
        basis[leave] = enter
    x = [num(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return z[-1], x[:n]


def _free_lp(caps, edges_per_path, owner, d1, d2, exact: bool = True):
    """Max concurrent throughput with free per-path values on a fixed path set."""
    used = sorted({e for es in edges_per_path for e in es})
    npaths = len(edges_per_path)
    A = [[int(e in es) for es in edges_per_path] + [0] for e in used]
    b = [caps[e] for e in used]
    for com, d in ((1, d1), (2, d2)):
        A.append([-1 if owner[j] == com else 0 for j in range(npaths)] + [d if exact else float(d)])
        b.append(0)
    c = [0] * npaths + [1]
    lam, x = _simplex_max(c, A, b, exact)
    return lam, x[:npaths]


@dataclass(frozen=True)
class ConcurrentOptimum:
    lam: Fraction
    flow: SplittableFlow
    mode: str


def _throughput(caps, edge_lists) -> Fraction:
    """Max single-commodity flow on a fixed path set (upper bound for the joint LP)."""
    used = sorted({e for es in edge_lists for e in es})
    A = [[int(e in es) for es in edge_lists] for e in used]
    return _simplex_max([1] * len(edge_lists), A, [caps[e] for e in used])[0]


def exact_concurrent(
    instance: Instance, d1: Fraction, d2: Fraction, mode: str = "free", limits: OracleLimits = OracleLimits()
) -> ConcurrentOptimum:
    """Largest ``lam`` such that ``lam * d_i`` is routed on ``k_i`` paths per commodity.

    ``mode`` restricts per-path values: ``free`` (any), ``bi`` (equal within a
    commodity) or ``total`` (equal everywhere).
    """
    d1, d2 = Fraction(d1), Fraction(d2)
    if d1 <= 0 or d2 <= 0:
        raise PreconditionError("demands must be positive")
    if mode not in ("free", "bi", "total"):
        raise ValueError(f"unknown mode {mode!r}")
    k1, k2 = instance.k1, instance.k2
    empty = ConcurrentOptimum(Fraction(0), SplittableFlow.empty(k1, k2), mode)
    if k1 == 0 or k2 == 0:
        return empty
    cat = catalog(instance, limits)
    if not cat.paths1 or not cat.paths2:
        return empty
    caps = instance.graph.capacities

    if mode == "total":
        z, p1, p2 = _tu_search(instance, cat, 1, 1, limits)
        lam = min(k1 * z / d1, k2 * z / d2)
        v1, v2 = lam * d1 / k1, lam * d2 / k2
        uni = Uniformity.TOTAL if v1 == v2 else Uniformity.BI
        return ConcurrentOptimum(lam, _selection_flow(instance, cat, p1, p2, v1, v2, uni), mode)

    if mode == "bi":
        # per-path values x = lam d1 / k1, y = lam d2 / k2; integer weights over a common denominator
        w1, w2 = d1 / k1, d2 / k2
        den = w1.denominator * w2.denominator
        r, p1, p2 = _tu_search(instance, cat, int(w1 * den), int(w2 * den), limits)
        lam = r * den
        return ConcurrentOptimum(lam, _selection_flow(instance, cat, p1, p2, lam * w1, lam * w2, Uniformity.BI), mode)

    budget = _Budget(limits.max_selections)

    def combos(paths, k, d):
        size = min(k, len(paths))
        budget.spend(comb(len(paths), size))
        out = [(_throughput(caps, [paths[i][1] for i in sel]) / d, sel) for sel in itertools.combinations(range(len(paths)), size)]
        out.sort(key=lambda t: -t[0])  # stable: ties keep lexicographic order
        return out

    c1 = combos(cat.paths1, k1, d1)
    c2 = combos(cat.paths2, k2, d2)
    # Hadamard bound on basis determinants after scaling demand rows to integers
    q = d1.denominator * d2.denominator
    nv = len(c1[0][1]) + len(c2[0][1]) + 1
    row = max(nv, max(k1, k2) * q * q + int(max(d1, d2) * q) ** 2)
    gap = float(row) ** -nv
    best = Fraction(-1)
    arg = None
    for ub1, sel1 in c1:
        if ub1 <= best:
            break
        for ub2, sel2 in c2:
            if ub2 <= best:
                break
            budget.spend()
            eps = [cat.paths1[i][1] for i in sel1] + [cat.paths2[i][1] for i in sel2]
            owner = [1] * len(sel1) + [2] * len(sel2)
            if arg is not None:
                approx, _ = _free_lp(caps, eps, owner, d1, d2, exact=False)
                if not _may_improve(approx, best, gap):
                    continue
            lam, vals = _free_lp(caps, eps, owner, d1, d2)
            if lam > best:
                best, arg = lam, (sel1, sel2, vals)
    sel1, sel2, vals = arg
    v1 = vals[: len(sel1)]
    v2 = vals[len(sel1) :]
    # trim any slack so each commodity ships exactly lam * d_i
    v1 = _rescale(v1, best * d1)
    v2 = _rescale(v2, best * d2)
    paths = [PathFlow(1, *cat.paths1[i], v) for i, v in zip(sel1, v1)]
    paths += [PathFlow(2, *cat.paths2[i], v) for i, v in zip(sel2, v2)]
    # pad with zero-flow repeats up to k_i paths
    paths += [PathFlow(1, *cat.paths1[sel1[0]], Fraction(0))] * (k1 - len(sel1))
    paths += [PathFlow(2, *cat.paths2[sel2[0]], Fraction(0))] * (k2 - len(sel2))
    paths.sort(key=lambda p: p.commodity)
    return ConcurrentOptimum(best, SplittableFlow(tuple(paths), k1, k2, Uniformity.NONE), mode)


def _rescale(vals: list[Fraction], target: Fraction) -> list[Fraction]:
    s = sum(vals, Fraction(0))
    if s == 0:
        return vals
    return [v * target / s for v in vals]


# --------------------------------------------------------------------------
# cut bounds


@dataclass(frozen=True)
class CutBoundAssignment:
    n1: dict[int, int]
    n2: dict[int, int]
    x: Fraction
    y: Fraction


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars + (total + parts - 1,):
            out.append(b - prev - 1)
            prev = b
        yield tuple(out)


def cut_bound(instance: Instance, members: Iterable[int], mode: str = "tu", *, with_assignment: bool = False):
    """Packing upper bound for one cut.

    ``tu``: largest common item size for ``dem(S)`` items.  ``bi``: largest
    ``x + y`` when each separated commodity's ``k_i`` items of size ``x``
    (resp. ``y``) must fit together into the boundary capacities; returns
    :data:`UNBOUNDED` when one of the values is unconstrained by the cut.
    """
    members = frozenset(members)
    g = instance.graph
    boundary = g.boundary(members)
    caps = [g.edges[e][2] for e in boundary]
    if mode == "tu":
        d = dem(instance, members)
        if d == 0:
            raise PreconditionError("cut has zero demand")
        return c_cut(caps, d).value
    if mode != "bi":
        raise ValueError(f"unknown mode {mode!r}")
    sep1 = separates(members, instance.s1, instance.t1)
    sep2 = separates(members, instance.s2, instance.t2)
    if not (sep1 or sep2):
        raise PreconditionError("cut separates neither commodity")
    if not (sep1 and instance.k1) or not (sep2 and instance.k2):
        return (UNBOUNDED, None) if with_assignment else UNBOUNDED
    nb = len(boundary)
    if nb == 0:
        # nothing crosses: both separated commodities are forced to zero
        zero = Fraction(0)
        return (zero, CutBoundAssignment({}, {}, zero, zero)) if with_assignment else zero
    best = None
    comps2 = list(_compositions(instance.k2, nb))
    for n1 in _compositions(instance.k1, nb):
        for n2 in comps2:
            rows = [(a, b, u) for a, b, u in zip(n1, n2, caps) if a or b]
            x, y = _lp2(rows)
            if best is None or x + y > best[2] + best[3]:
                best = (n1, n2, x, y)
    n1, n2, x, y = best
    value = x + y
    if with_assignment:
        return value, CutBoundAssignment(dict(zip(boundary, n1)), dict(zip(boundary, n2)), x, y)
    return value


def two_cut_bound(instance: Instance, s_members: Iterable[int], t_members: Iterable[int]):
    """Experimental: combine one cut's bound on ``x`` with another's on ``y``.

    Returns the minimum of both single-cut ``bi`` bounds and
    ``c_{k1}(S) + c_{k2}(T)`` (each term only when that cut separates the
    commodity; otherwise it is unbounded).
    """
    g = instance.graph
    S, T = frozenset(s_members), frozenset(t_members)
    vals = []
    for cut in (S, T):
        if separates(cut, instance.s1, instance.t1) or separates(cut, instance.s2, instance.t2):
            b = cut_bound(instance, cut, "bi")
            if b is not UNBOUNDED:
                vals.append(b)
    if separates(S, instance.s1, instance.t1) and separates(T, instance.s2, instance.t2) and instance.k1 and instance.k2:
        xs = c_cut([g.edges[e][2] for e in g.boundary(S)], instance.k1).value
        yt = c_cut([g.edges[e][2] for e in g.boundary(T)], instance.k2).value
        vals.append(xs + yt)
    return min(vals) if vals else UNBOUNDED


# --------------------------------------------------------------------------
# flow verification


@dataclass
class VerifyReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"check": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def verify_flow(instance: Instance, flow: SplittableFlow) -> VerifyReport:
    """Check path validity, path counts, capacities and declared uniformity."""
    g = instance.graph
    rep = VerifyReport()
    for i, p in enumerate(flow.paths):
        s, t = instance.pair(p.commodity)
        ok = (
            len(p.vertices) == len(p.edges) + 1
            and p.vertices[0] == s
            and p.vertices[-1] == t
            and len(set(p.vertices)) == len(p.vertices)
            and all(
                0 <= e < g.edge_count and {g.edges[e][0], g.edges[e][1]} == {u, v}
                for u, v, e in zip(p.vertices, p.vertices[1:], p.edges)
            )
        )
        rep.add(f"path[{i}]", ok, "" if ok else "invalid path")
        rep.add(f"path[{i}].value", p.value >= 0, "" if p.value >= 0 else "negative path value")
    for com, k in ((1, flow.k1), (2, flow.k2)):
        have = len(flow.commodity_paths(com))
        # a commodity with no paths at all is the explicit zero flow
        ok = have == k or have == 0
        rep.add(f"count[{com}]", ok, "" if ok else f"commodity {com} has {have} paths, expected {k}")
    loads = flow.edge_loads(g.edge_count) if all(0 <= e < g.edge_count for p in flow.paths for e in p.edges) else None
    if loads is None:
        rep.add("capacity", False, "path references unknown edge")
    else:
        bad = [e for e, load in enumerate(loads) if load > g.edges[e][2]]
        for e in bad:
            rep.add(f"capacity[{e}]", False, f"capacity violated at edge {e}: load {loads[e]} > {g.edges[e][2]}")
        if not bad:
            rep.add("capacity", True)
    vals1 = {p.value for p in flow.commodity_paths(1)}
    vals2 = {p.value for p in flow.commodity_paths(2)}
    if flow.uniformity == Uniformity.TOTAL:
        ok = len(vals1 | vals2) <= 1
        rep.add("uniformity", ok, "" if ok else "path values differ")
    elif flow.uniformity == Uniformity.BI:
        ok = len(vals1) <= 1 and len(vals2) <= 1
        rep.add("uniformity", ok, "" if ok else "path values differ within a commodity")
    return rep
