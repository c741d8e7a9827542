"""Graph and instance model, the ``.biflow`` text format and a random generator.

All flow and cut values are exact rationals (:class:`fractions.Fraction`);
capacities and path counts are plain integers.  Vertices are 1-based and edge
ids are 0-based positions in :attr:`Graph.edges` (file order).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

ExactRatio = Fraction

__all__ = [
    "Cut",
    "ExactRatio",
    "Graph",
    "Instance",
    "InstanceFormatError",
    "KsplitError",
    "PreconditionError",
    "generate_instance",
    "parse_instance",
    "parse_ratio",
    "ratio_str",
    "serialize_instance",
]


class KsplitError(Exception):
    """Base class for all errors raised by this package."""


class InstanceFormatError(KsplitError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PreconditionError(KsplitError, ValueError):
    """An operation was called outside its domain (e.g. a demand ratio mismatch)."""


def ratio_str(x: Fraction | int) -> str:
    """Exact ``num/den`` rendering; integers keep an explicit ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_ratio(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    try:
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact ratio: {text!r}") from exc
    return value


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph with nonnegative integer capacities.

    ``edges`` holds ``(a, b, capacity)`` triples; an edge's orientation
    ``a -> b`` is the reference direction for signed flows.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        for i, (a, b, cap) in enumerate(self.edges):
            if not (1 <= a <= self.vertex_count and 1 <= b <= self.vertex_count):
                raise ValueError(f"edge {i}: vertex id out of range")
            if a == b:
                raise ValueError(f"edge {i}: self-loop rejected")
            if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
                raise ValueError(f"edge {i}: capacity must be a nonnegative integer")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @property
    def capacities(self) -> tuple[int, ...]:
        return tuple(e[2] for e in self.edges)

    @property
    def max_capacity(self) -> int:
        return max(self.capacities, default=0)

    def with_capacities(self, caps: Iterable[int]) -> "Graph":
        caps = tuple(caps)
        if len(caps) != len(self.edges):
            raise ValueError("capacity vector length mismatch")
        return Graph(self.vertex_count, tuple((a, b, c) for (a, b, _), c in zip(self.edges, caps)))

    def with_extra_edges(self, extra: Iterable[tuple[int, int, int]]) -> "Graph":
        return Graph(self.vertex_count, self.edges + tuple(extra))

    def boundary(self, members: Iterable[int]) -> tuple[int, ...]:
        """Ids of edges with exactly one endpoint in ``members``."""
        inside = set(members)
        return tuple(i for i, (a, b, _) in enumerate(self.edges) if (a in inside) != (b in inside))

    def incident(self, v: int) -> list[int]:
        return [i for i, (a, b, _) in enumerate(self.edges) if a == v or b == v]


@dataclass(frozen=True)
class Instance:
    graph: Graph
    s1: int
    t1: int
    s2: int
    t2: int
    k1: int
    k2: int
    d1: Optional[Fraction] = None
    d2: Optional[Fraction] = None

    def __post_init__(self) -> None:
        n = self.graph.vertex_count
        for name in ("s1", "t1", "s2", "t2"):
            v = getattr(self, name)
            if not 1 <= v <= n:
                raise ValueError(f"terminal {name}={v} out of range 1..{n}")
        if self.s1 == self.t1 or self.s2 == self.t2:
            raise ValueError("source and sink of a commodity must differ")
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError("split counts must be nonnegative")
        if (self.d1 is None) != (self.d2 is None):
            raise ValueError("demands must be given for both commodities or neither")
        if self.d1 is not None:
            object.__setattr__(self, "d1", Fraction(self.d1))
            object.__setattr__(self, "d2", Fraction(self.d2))
            if self.d1 <= 0 or self.d2 <= 0:
                raise ValueError("demands must be positive")

    @property
    def terminals(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.s1, self.t1), (self.s2, self.t2)

    def pair(self, commodity: int) -> tuple[int, int]:
        return (self.s1, self.t1) if commodity == 1 else (self.s2, self.t2)

    def k(self, commodity: int) -> int:
        return self.k1 if commodity == 1 else self.k2

    def with_k(self, k1: int, k2: int) -> "Instance":
        return replace(self, k1=k1, k2=k2)

    def with_graph(self, graph: Graph) -> "Instance":
        return replace(self, graph=graph)


@dataclass(frozen=True)
class Cut:
    """A vertex set ``members`` with its boundary edge ids and forced demand."""

    members: frozenset[int]
    boundary: tuple[int, ...] = field(default=())
    demand: int = 0

    @classmethod
    def of(cls, instance: Instance, members: Iterable[int]) -> "Cut":
        from ksplit.cuts import dem

        members = frozenset(members)
        return cls(members, instance.graph.boundary(members), dem(instance, members))

    def capacity(self, graph: Graph) -> int:
        return sum(graph.edges[e][2] for e in self.boundary)


def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError(f"{what}: expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: bytes | str) -> Instance:
    """Parse the line-oriented ``p biflow`` format.

    Raises:
        InstanceFormatError: on any malformed content; ``.line`` is 1-based.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: Optional[tuple[int, int]] = None
    header_line = 0
    terms: dict[int, tuple[int, int, int, Optional[Fraction]]] = {}
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind, rest = tok[0], tok[1:]
        if kind == "p":
            if header is not None:
                raise InstanceFormatError("duplicate problem line", lineno)
            if len(rest) != 3 or rest[0] != "biflow":
                raise InstanceFormatError("expected 'p biflow <n> <m>'", lineno)
            n, m = _ints(rest[1:], lineno, "problem line")
            if n < 1 or m < 0:
                raise InstanceFormatError("vertex count must be positive and edge count nonnegative", lineno)
            header, header_line = (n, m), lineno
        elif kind == "t":
            if header is None:
                raise InstanceFormatError("terminal line before problem line", lineno)
            if len(rest) not in (4, 5):
                raise InstanceFormatError("expected 't <i> <s> <t> <k> [<num>/<den>]'", lineno)
            i, s, t, k = _ints(rest[:4], lineno, "terminal line")
            if i not in (1, 2):
                raise InstanceFormatError(f"commodity index must be 1 or 2, got {i}", lineno)
            if i in terms:
                raise InstanceFormatError(f"duplicate terminal declaration for commodity {i}", lineno)
            for v in (s, t):
                if not 1 <= v <= header[0]:
                    raise InstanceFormatError(f"vertex id {v} out of range 1..{header[0]}", lineno)
            if s == t:
                raise InstanceFormatError(f"commodity {i} source equals sink", lineno)
            if k < 0:
                raise InstanceFormatError("split count must be nonnegative", lineno)
            demand = None
            if len(rest) == 5:
                try:
                    demand = parse_ratio(rest[4])
                except ValueError as exc:
                    raise InstanceFormatError(str(exc), lineno) from None
                if demand <= 0:
                    raise InstanceFormatError("demand must be positive", lineno)
            terms[i] = (s, t, k, demand)
        elif kind == "e":
            if header is None:
                raise InstanceFormatError("edge line before problem line", lineno)
            if len(rest) != 3:
                raise InstanceFormatError("expected 'e <u> <v> <cap>'", lineno)
            try:
                a, b = int(rest[0]), int(rest[1])
            except ValueError:
                raise InstanceFormatError("edge endpoints must be integers", lineno) from None
            try:
                cap = int(rest[2])
            except ValueError:
                raise InstanceFormatError(f"capacity must be a nonnegative integer, got {rest[2]!r}", lineno) from None
            for v in (a, b):
                if not 1 <= v <= header[0]:
                    raise InstanceFormatError(f"vertex id {v} out of range 1..{header[0]}", lineno)
            if a == b:
                raise InstanceFormatError("self-loop rejected", lineno)
            if cap < 0:
                raise InstanceFormatError(f"capacity must be a nonnegative integer, got {cap}", lineno)
            edges.append((a, b, cap))
        else:
            raise InstanceFormatError(f"unknown directive {kind!r}", lineno)
    if header is None:
        raise InstanceFormatError("missing problem line 'p biflow <n> <m>'")
    for i in (1, 2):
        if i not in terms:
            raise InstanceFormatError(f"missing terminal declaration for commodity {i}")
    if len(edges) != header[1]:
        raise InstanceFormatError(f"problem line declares {header[1]} edges, found {len(edges)}", header_line)
    (s1, t1, k1, d1), (s2, t2, k2, d2) = terms[1], terms[2]
    if (d1 is None) != (d2 is None):
        raise InstanceFormatError("demands must be given for both commodities or neither")
    return Instance(Graph(header[0], tuple(edges)), s1, t1, s2, t2, k1, k2, d1, d2)


def serialize_instance(inst: Instance) -> bytes:
    g = inst.graph
    lines = [f"p biflow {g.vertex_count} {g.edge_count}"]
    for i, (s, t, k, d) in enumerate(
        ((inst.s1, inst.t1, inst.k1, inst.d1), (inst.s2, inst.t2, inst.k2, inst.d2)), start=1
    ):
        lines.append(f"t {i} {s} {t} {k}" + (f" {ratio_str(d)}" if d is not None else ""))
    lines.extend(f"e {a} {b} {c}" for a, b, c in g.edges)
    return ("\n".join(lines) + "\n").encode("utf-8")


def generate_instance(vertices: int, edges: int, max_capacity: int, k1: int, k2: int, seed: int) -> Instance:
    """Pseudo-random instance, fully determined by the arguments.

    Edge endpoints are uniform over distinct vertex pairs (parallel edges
    allowed), capacities uniform in ``1..max_capacity``.  Connectivity is
    not enforced.
    """
    if vertices < 2:
        raise PreconditionError("need at least 2 vertices")
    if edges < 0 or max_capacity < 1:
        raise PreconditionError("edges must be >= 0 and max_capacity >= 1")
    rng = random.Random(seed)
    s1, t1 = rng.sample(range(1, vertices + 1), 2)
    s2, t2 = rng.sample(range(1, vertices + 1), 2)
    es = []
    for _ in range(edges):
        a, b = rng.sample(range(1, vertices + 1), 2)
        es.append((a, b, rng.randint(1, max_capacity)))
    return Instance(Graph(vertices, tuple(es)), s1, t1, s2, t2, k1, k2)
