"""The canonical (Tits) representation of W on the span of the simple roots.

Everything here is exact. The root-sign descent test gives a length
function that never touches braid moves, so it serves as an independent
oracle for :mod:`coxcomm.words`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .graph import CoxeterGraph, GeneratorSubset
from .reflection import (
    ReflectionMatrix,
    doubled_form,
    form_matrix,
    units,
    vector_sign,
)
from .scalars import ONE, ZERO, Scalar
from .words import Element, conjugate, generator, inverse, is_right_descent, product

@dataclass(frozen=True)
class Root:
    coords: tuple[Scalar, ...]

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other: Root) -> Root:
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, k) -> Root:
        return Root(tuple(a * k for a in self.coords))

    def format(self, g: CoxeterGraph) -> str:
        parts = [f"({c})e_{s}" for s, c in zip(g.generators, self.coords) if c]
        return " + ".join(parts) if parts else "0"


def simple_root(g: CoxeterGraph, s: int) -> Root:
    return Root(tuple(ONE if t == s else ZERO for t in range(g.rank)))


def bilinear_form(g: CoxeterGraph, r1: Root, r2: Root) -> Scalar:
    B = form_matrix(g)
    total = ZERO
    for i, a in enumerate(r1.coords):
        if not a:
            continue
        for j, b in enumerate(r2.coords):
            if b:
                total = total + a * b * B[i][j]
    return total


def _pair_with_simple(B, coords: Sequence[Scalar], s: int) -> Scalar:
    total = ZERO
    for t, a in enumerate(coords):
        if a:
            total = total + a * B[t][s]
    return total


def reflect(g: CoxeterGraph, s: int, r: Root) -> Root:
    """s(x) = x - 2 B(x, e_s) e_s; only the s coordinate changes."""
    B = form_matrix(g)
    coords = list(r.coords)
    coords[s] = coords[s] - 2 * _pair_with_simple(B, coords, s)
    return Root(tuple(coords))


def act(g: CoxeterGraph, w: Element | Iterable[int], r: Root) -> Root:
    word = w.word if isinstance(w, Element) else tuple(w)
    for s in reversed(word):
        r = reflect(g, s, r)
    return r


def root_sign(r: Root) -> int:
    """+1 for a positive root, -1 for a negative one; raises on mixed signs."""
    signs = {c.sign() for c in r.coords} - {0}
    if len(signs) != 1:
        raise ValueError(f"not a root: coordinate signs {sorted(signs)}")
    return signs.pop()


def is_positive(r: Root) -> bool:
    return root_sign(r) > 0


def root_length(g: CoxeterGraph, letters: Iterable[int]) -> int:
    """Length of the element spelled by ``letters`` (reduced or not),
    found by stripping right descents detected as negative roots w(e_s)."""
    M = ReflectionMatrix(g)
    for s in letters:
        M.times(s)
    n = g.rank
    length = 0
    while True:
        for s in range(n):
            if M.column_sign(s) < 0:
                M.times(s)
                length += 1
                break
        else:
            return length


def root_descent(g: CoxeterGraph, w: Element | Iterable[int], s: int) -> bool:
    """True iff l(ws) < l(w), decided as w(e_s) < 0."""
    word = w.word if isinstance(w, Element) else tuple(w)
    B2 = doubled_form(g)
    zero, one = units(B2)
    v = [zero] * g.rank
    v[s] = one
    for t in reversed(word):
        pairing = zero
        for u, a in enumerate(v):
            if a:
                pairing = pairing + a * B2[u][t]
        v[t] = v[t] - pairing
    return vector_sign(v) < 0


def positive_roots_up_to_depth(
    g: CoxeterGraph, depth: int, cap: int = 10**5
) -> list[tuple[Root, Element]]:
    """Positive roots reachable from a simple root by <= depth reflections,
    each paired with its reflection r_alpha = w s w^-1 (normal form).

    A generator s sends a positive root other than e_s to a positive root,
    so breadth-first search over s(alpha) enumerates the positive system by
    depth.
    """
    found: dict[Root, Element] = {}
    queue: deque[tuple[Root, Element, int]] = deque()
    for s in range(g.rank):
        r = simple_root(g, s)
        found[r] = generator(s)
        queue.append((r, generator(s), 0))
    out = list(found.items())
    while queue:
        alpha, refl, d = queue.popleft()
        if d == depth:
            continue
        for s in range(g.rank):
            beta = reflect(g, s, alpha)
            if not is_positive(beta) or beta in found:
                continue
            ref = conjugate(g, generator(s), refl)
            found[beta] = ref
            out.append((beta, ref))
            if len(out) > cap:
                raise BudgetExceeded(f"more than {cap} positive roots")
            queue.append((beta, ref, d + 1))
    return out


def simple_image_set(g: CoxeterGraph, w: Element, x: GeneratorSubset) -> GeneratorSubset | None:
    """X' with w(E_x) = E_X', tested on the length side: every s in x must
    satisfy l(ws) > l(w) and w s w^-1 must be a generator. None otherwise."""
    winv = inverse(g, w)
    image = 0
    for s in x:
        if is_right_descent(g, w, s):
            return None
        c = product(g, w, generator(s), winv)
        if c.length != 1:
            return None
        image |= 1 << c.word[0]
    return GeneratorSubset(image)


def simple_image_set_by_roots(g: CoxeterGraph, w: Element, x: GeneratorSubset) -> GeneratorSubset | None:
    """Same question answered on the root side: is each w(e_s) a simple root?"""
    image = 0
    for s in x:
        r = act(g, w, simple_root(g, s))
        nonzero = [t for t, c in enumerate(r.coords) if c]
        if len(nonzero) != 1 or r.coords[nonzero[0]] != ONE:
            return None
        image |= 1 << nonzero[0]
    return GeneratorSubset(image)
