"""Integer-or-exact matrices of the canonical reflection representation.

Shared by the root-system code and by the geometric word engine.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedLabelError
from .graph import INF, CoxeterGraph
from .scalars import COS_PI_OVER, ONE, ZERO, Scalar

SUPPORTED_LABELS = frozenset(COS_PI_OVER) | {INF}


def is_supported(g: CoxeterGraph) -> bool:
    return all(g.m(i, j) in SUPPORTED_LABELS for i in range(g.rank) for j in range(g.rank) if i != j)


def form_matrix(g: CoxeterGraph) -> tuple[tuple[Scalar, ...], ...]:
    """B(e_s, e_t) = -cos(pi/m_st), and -1 for m_st = inf."""
    cached = g._cache.get("form")
    if cached is not None:
        return cached
    rows = []
    for i in range(g.rank):
        row = []
        for j in range(g.rank):
            m = g.m(i, j)
            if i == j:
                row.append(ONE)
            elif m == INF:
                row.append(-ONE)
            elif m in COS_PI_OVER:
                row.append(-COS_PI_OVER[m])
            else:
                raise UnsupportedLabelError(
                    f"label {m} on {g.generators[i]},{g.generators[j]} is outside the exact field; "
                    "use the word-based routines"
                )
        rows.append(tuple(row))
    cached = g._cache["form"] = tuple(rows)
    return cached


def doubled_form(g: CoxeterGraph) -> list[list]:
    """2B as a matrix of the cheapest exact number type that holds it.

    Labels in {2, 3, inf} make 2B integral; other labels need Scalars.
    """
    cached = g._cache.get("form2")
    if cached is not None:
        return cached
    B = form_matrix(g)
    if all(b.is_rational() for row in B for b in row):
        rows = [[2 * b.c[0] for b in row] for row in B]
        if all(q.denominator == 1 for row in rows for q in row):
            rows = [[int(q) for q in row] for row in rows]
    else:
        rows = [[2 * b for b in row] for row in B]
    g._cache["form2"] = rows
    return rows


def units(B2) -> tuple:
    x = B2[0][0]
    if isinstance(x, Scalar):
        return ZERO, ONE
    if isinstance(x, Fraction):
        return Fraction(0), Fraction(1)
    return 0, 1


def number_sign(a) -> int:
    if isinstance(a, Scalar):
        return a.sign()
    return (a > 0) - (a < 0)


def vector_sign(v) -> int:
    signs = {number_sign(a) for a in v} - {0}
    if len(signs) != 1:
        raise ValueError(f"not a root: coordinate signs {sorted(signs)}")
    return signs.pop()


class ReflectionMatrix:
    """Columns w(e_t) of the matrix of w, updated under right multiplication."""

    def __init__(self, g: CoxeterGraph):
        self.B2 = doubled_form(g)
        zero, one = units(self.B2)
        n = g.rank
        self.cols = [[one if i == t else zero for i in range(n)] for t in range(n)]

    def times(self, s: int) -> None:
        B2, cols = self.B2, self.cols
        cs = cols[s]
        for t in range(len(cols)):
            if t == s:
                continue
            k = B2[t][s]
            if k:
                cols[t] = [a - k * b for a, b in zip(cols[t], cs)]
        cols[s] = [-a for a in cs]

    def column_sign(self, s: int) -> int:
        return vector_sign(self.cols[s])

    def left_times(self, s: int) -> None:
        """M <- s M; only coordinate s of each column moves."""
        B2 = self.B2
        for col in self.cols:
            pairing = 0
            for u, a in enumerate(col):
                if a:
                    pairing = pairing + a * B2[u][s]
            if pairing:
                col[s] = col[s] - pairing

    def descents(self) -> int:
        """Bitmask of the s with w(e_s) negative, i.e. the right descents of w.

        A root has all coordinates of one sign, so the first nonzero one
        decides; use :func:`vector_sign` to validate a vector in full.
        """
        bits = 0
        for s, col in enumerate(self.cols):
            for a in col:
                if a:
                    if a < 0:
                        bits |= 1 << s
                    break
        return bits

    def first_descent(self) -> int:
        """Smallest right descent of w, or -1."""
        for s, col in enumerate(self.cols):
            for a in col:
                if a:
                    if a < 0:
                        return s
                    break
        return -1

    def copy(self) -> ReflectionMatrix:
        other = object.__new__(ReflectionMatrix)
        other.B2 = self.B2
        other.cols = [list(c) for c in self.cols]
        return other
