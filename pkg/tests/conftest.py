from functools import lru_cache
from pathlib import Path

from hypothesis import strategies as st

from coxcomm.graph import INF, CoxeterGraph, load_graph
from coxcomm.words import parse_word

DATA = Path(__file__).resolve().parents[1] / "src" / "coxcomm" / "data"

CORPUS = ("g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8")


@lru_cache(maxsize=None)
def graph(name: str) -> CoxeterGraph:
    return load_graph(DATA / f"{name}.cox")


def word(g, text):
    return parse_word(g, text)


def subset(g, text):
    return g.parse_subset(text)


SUPPORTED = [2, 3, 4, 5, 6, INF]


@st.composite
def coxeter_graphs(draw, min_rank=2, max_rank=4, labels=tuple(SUPPORTED)):
    n = draw(st.integers(min_rank, max_rank))
    names = [chr(ord("a") + i) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            m = draw(st.sampled_from(labels))
            if m != 2:
                edges.append((names[i], names[j], m))
    return CoxeterGraph.from_edges(names, edges)


@st.composite
def graph_and_word(draw, max_len=10, **kw):
    g = draw(coxeter_graphs(**kw))
    w = draw(st.lists(st.integers(0, g.rank - 1), max_size=max_len))
    return g, w
