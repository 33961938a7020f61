"""Coxeter graphs, generator subsets and the finite/infinite split of a
parabolic subgroup.

Graph text format::

    a b c          # vertex names, in generator order
    a b inf        # m_ab = infinity
    b c 3          # unlisted pairs default to 2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError, PreconditionError, UnknownGeneratorError

INF = math.inf

Label = int | float


@dataclass(frozen=True)
class GeneratorSubset:
    """A subset of S as a bitmask over the ordered generator list."""

    bits: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> GeneratorSubset:
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(bits)

    def __iter__(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __or__(self, other: GeneratorSubset) -> GeneratorSubset:
        return GeneratorSubset(self.bits | other.bits)

    def __and__(self, other: GeneratorSubset) -> GeneratorSubset:
        return GeneratorSubset(self.bits & other.bits)

    def __sub__(self, other: GeneratorSubset) -> GeneratorSubset:
        return GeneratorSubset(self.bits & ~other.bits)

    def __le__(self, other: GeneratorSubset) -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: GeneratorSubset) -> bool:
        return self <= other and self != other

    def __ge__(self, other: GeneratorSubset) -> bool:
        return other <= self

    def with_(self, i: int) -> GeneratorSubset:
        return GeneratorSubset(self.bits | 1 << i)

    def without(self, i: int) -> GeneratorSubset:
        return GeneratorSubset(self.bits & ~(1 << i))

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty subset has no minimum")
        return (self.bits & -self.bits).bit_length() - 1


EMPTY = GeneratorSubset(0)


@dataclass(frozen=True)
class CoxeterGraph:
    generators: tuple[str, ...]
    matrix: tuple[tuple[Label, ...], ...]
    # Word-problem memo; never affects results.
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise GraphParseError("duplicate generator name")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise GraphParseError("matrix shape does not match generator count")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise GraphParseError(f"m[{self.generators[i]},{self.generators[i]}] must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise GraphParseError("Coxeter matrix must be symmetric")
                if not (m == INF or (isinstance(m, int) and m >= 2)):
                    raise GraphParseError(
                        f"label of {self.generators[i]},{self.generators[j]} must be >= 2 or inf, got {m}"
                    )

    @classmethod
    def from_edges(cls, generators: Sequence[str], edges: Iterable[tuple[str, str, Label]] = ()) -> CoxeterGraph:
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise GraphParseError("duplicate generator name")
        pos = {s: i for i, s in enumerate(gens)}
        n = len(gens)
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for s, t, m in edges:
            if s not in pos or t not in pos:
                raise GraphParseError(f"unknown vertex in edge {s} {t}")
            i, j = pos[s], pos[t]
            if i == j:
                raise GraphParseError(f"label on self-pair {s} {s}")
            rows[i][j] = rows[j][i] = m
        return cls(gens, tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> Label:
        return self.matrix[i][j]

    @property
    def full(self) -> GeneratorSubset:
        return GeneratorSubset((1 << self.rank) - 1)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    def subset(self, names: Iterable[str]) -> GeneratorSubset:
        return GeneratorSubset.of(self.index(s) for s in names)

    def parse_subset(self, text: str) -> GeneratorSubset:
        """Comma-separated names; empty string, ``-`` or ``{}`` mean the empty set."""
        text = text.strip()
        if text in ("", "-", "{}", "<>"):
            return EMPTY
        if text == "*":
            return self.full
        return self.subset(p.strip() for p in text.split(",") if p.strip())

    def names(self, x: GeneratorSubset) -> list[str]:
        return [self.generators[i] for i in x]

    def format_subset(self, x: GeneratorSubset) -> str:
        return ",".join(self.names(x))

    def with_label(self, s: str, t: str, m: Label) -> CoxeterGraph:
        """Copy of the graph with one label replaced (used for negative controls)."""
        i, j = self.index(s), self.index(t)
        if i == j:
            raise GraphParseError("cannot relabel a self-pair")
        rows = [list(r) for r in self.matrix]
        rows[i][j] = rows[j][i] = m
        return CoxeterGraph(self.generators, tuple(tuple(r) for r in rows))

    def to_text(self) -> str:
        lines = [" ".join(self.generators)]
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.matrix[i][j]
                if m != 2:
                    lines.append(f"{self.generators[i]} {self.generators[j]} {format_label(m)}")
        return "\n".join(lines) + "\n"


def format_label(m: Label) -> str:
    return "inf" if m == INF else str(m)


def parse_label(tok: str, lineno: int = 0) -> Label:
    if tok.lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        m = int(tok)
    except ValueError:
        raise GraphParseError(f"line {lineno}: malformed label {tok!r}") from None
    if m < 2:
        raise GraphParseError(f"line {lineno}: label must be >= 2, got {m}")
    return m


def parse_graph(text: str) -> CoxeterGraph:
    vertices: list[str] | None = None
    edges: dict[tuple[str, str], Label] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if vertices is None:
            if len(set(toks)) != len(toks):
                dup = next(t for t in toks if toks.count(t) > 1)
                raise GraphParseError(f"line {lineno}: duplicate vertex {dup!r}")
            vertices = toks
            continue
        if len(toks) != 3:
            raise GraphParseError(f"line {lineno}: expected 's t m', got {line!r}")
        s, t, tok = toks
        for v in (s, t):
            if v not in vertices:
                raise GraphParseError(f"line {lineno}: unknown vertex {v!r}")
        if s == t:
            raise GraphParseError(f"line {lineno}: label on self-pair {s} {s}")
        m = parse_label(tok, lineno)
        key = (s, t) if vertices.index(s) < vertices.index(t) else (t, s)
        if key in edges and edges[key] != m:
            raise GraphParseError(f"line {lineno}: conflicting labels for {s} {t}")
        edges[key] = m
    if vertices is None:
        raise GraphParseError("no vertex line")
    return CoxeterGraph.from_edges(vertices, ((s, t, m) for (s, t), m in edges.items()))


def load_graph(path) -> CoxeterGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def connected_components(g: CoxeterGraph, x: GeneratorSubset) -> list[GeneratorSubset]:
    """Components of Gamma_X (edges where m >= 3), ordered by smallest member."""
    remaining = x
    parts = []
    while remaining:
        start = remaining.min()
        comp = GeneratorSubset.of([start])
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for j in remaining:
                if j not in comp and g.m(i, j) >= 3:
                    comp = comp.with_(j)
                    frontier.append(j)
        parts.append(comp)
        remaining = remaining - comp
    return parts


@dataclass(frozen=True)
class ComponentType:
    kind: str
    rank: int
    order: int | float

    @property
    def is_finite(self) -> bool:
        return self.order != INF

    def __str__(self):
        return self.kind


_E_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}


def _infinite(n: int) -> ComponentType:
    return ComponentType("infinite", n, INF)


def _walk_path(adj: dict[int, list[int]]) -> list[int]:
    start = next(v for v, nb in adj.items() if len(nb) == 1)
    path, prev = [start], None
    while True:
        nxt = [v for v in adj[path[-1]] if v != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def classify_component(g: CoxeterGraph, x: GeneratorSubset) -> ComponentType:
    """Match a connected subset against the finite-type templates.

    Anything that fits no template (A, B, D, E, F, H, I2) is infinite.
    """
    n = len(x)
    if n == 0:
        return ComponentType("A_0", 0, 1)
    if len(connected_components(g, x)) != 1:
        raise PreconditionError(f"subset {g.format_subset(x)} is not connected")
    if n == 1:
        return ComponentType("A_1", 1, 2)
    verts = list(x)
    edges = [(i, j, g.m(i, j)) for a, i in enumerate(verts) for j in verts[a + 1:] if g.m(i, j) >= 3]
    if any(m == INF for _, _, m in edges):
        return _infinite(n)
    if n == 2:
        m = edges[0][2]
        if m == 3:
            return ComponentType("A_2", 2, 6)
        if m == 4:
            return ComponentType("B_2", 2, 8)
        return ComponentType(f"I2({m})", 2, 2 * m)
    if len(edges) != n - 1:
        return _infinite(n)
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for i, j, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    heavy = [(i, j, m) for i, j, m in edges if m > 3]
    if len(heavy) > 1:
        return _infinite(n)
    if heavy:
        i, j, m = heavy[0]
        if m > 5 or max(len(nb) for nb in adj.values()) > 2:
            return _infinite(n)
        path = _walk_path(adj)
        k = min(path.index(i), path.index(j))
        at_end = k in (0, n - 2)
        if m == 4:
            if at_end:
                return ComponentType(f"B_{n}", n, 2**n * math.factorial(n))
            if n == 4:
                return ComponentType("F4", 4, 1152)
        elif m == 5 and at_end:
            if n == 3:
                return ComponentType("H3", 3, 120)
            if n == 4:
                return ComponentType("H4", 4, 14400)
        return _infinite(n)
    branch = [v for v, nb in adj.items() if len(nb) >= 3]
    if not branch:
        return ComponentType(f"A_{n}", n, math.factorial(n + 1))
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return _infinite(n)
    centre = branch[0]
    arms = []
    for first in adj[centre]:
        length, prev, cur = 1, centre, first
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ComponentType(f"D_{n}", n, 2 ** (n - 1) * math.factorial(n))
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ComponentType(f"E{n}", n, _E_ORDERS[n])
    return _infinite(n)


def components_with_types(g: CoxeterGraph, x: GeneratorSubset) -> list[tuple[GeneratorSubset, ComponentType]]:
    return [(c, classify_component(g, c)) for c in connected_components(g, x)]


def is_finite_type(g: CoxeterGraph, x: GeneratorSubset) -> bool:
    return all(t.is_finite for _, t in components_with_types(g, x))


def decompose_subset(g: CoxeterGraph, x: GeneratorSubset) -> tuple[GeneratorSubset, GeneratorSubset]:
    """Split X into (X^0, X^inf): unions of finite and of infinite components."""
    x0 = xinf = EMPTY
    for comp, ctype in components_with_types(g, x):
        if ctype.is_finite:
            x0 = x0 | comp
        else:
            xinf = xinf | comp
    return x0, xinf


def perpendicular_set(g: CoxeterGraph, x: GeneratorSubset) -> GeneratorSubset:
    """Generators t with m_{s,t} = 2 for every s in x (so t itself is never in x)."""
    return GeneratorSubset.of(t for t in range(g.rank) if all(g.m(s, t) == 2 for s in x))


@dataclass(frozen=True)
class ParabolicAnalysis:
    x: GeneratorSubset
    components: tuple[tuple[GeneratorSubset, ComponentType], ...]
    x0: GeneratorSubset
    xinf: GeneratorSubset
    yinf: GeneratorSubset
    commensurator: GeneratorSubset
    self_commensurating: bool


def analyze_parabolic(g: CoxeterGraph, x: GeneratorSubset) -> ParabolicAnalysis:
    comps = tuple(components_with_types(g, x))
    x0 = xinf = EMPTY
    for comp, ctype in comps:
        if ctype.is_finite:
            x0 = x0 | comp
        else:
            xinf = xinf | comp
    yinf = perpendicular_set(g, xinf)
    return ParabolicAnalysis(
        x=x,
        components=comps,
        x0=x0,
        xinf=xinf,
        yinf=yinf,
        commensurator=yinf | xinf,
        self_commensurating=x0 == yinf,
    )
