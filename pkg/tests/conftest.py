from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from ksplit.core import Graph, Instance, parse_instance

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("ksplit", deadline=None, max_examples=60)
settings.load_profile("ksplit")


def load(name: str) -> Instance:
    return parse_instance((FIXTURES / name).read_bytes())


@pytest.fixture
def c4() -> Instance:
    return load("c4.biflow")


@pytest.fixture
def disjoint46() -> Instance:
    return load("disjoint46.biflow")


@st.composite
def graphs(draw, max_n: int = 6, max_m: int = 9, max_cap: int = 8, min_n: int = 2):
    n = draw(st.integers(min_n, max_n))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    ends = draw(st.lists(pairs, max_size=max_m))
    caps = draw(st.lists(st.integers(0, max_cap), min_size=len(ends), max_size=len(ends)))
    return Graph(n, tuple((a, b, c) for (a, b), c in zip(ends, caps)))


@st.composite
def instances(draw, max_n: int = 6, max_m: int = 9, max_cap: int = 8, max_k: int = 2, positive_k: bool = True):
    g = draw(graphs(max_n, max_m, max_cap, min_n=2))
    n = g.vertex_count
    pair = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    s1, t1 = draw(pair)
    s2, t2 = draw(pair)
    lo = 1 if positive_k else 0
    k1 = draw(st.integers(lo, max_k))
    k2 = draw(st.integers(lo, max_k))
    return Instance(g, s1, t1, s2, t2, k1, k2)
