"""Intersections, normalizers, quasi-centralizers and commensurators of
parabolic subgroups, plus the groupoid of elementary conjugations between
simple-root subsets.

Membership predicates are exact: they reduce an element to a minimal
(double) coset representative and ask whether that representative
permutes the relevant generators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionError
from .graph import (
    CoxeterGraph,
    GeneratorSubset,
    classify_component,
    components_with_types,
    connected_components,
    decompose_subset,
    perpendicular_set,
)
from .roots import simple_image_set
from .words import (
    IDENTITY,
    Element,
    double_coset_decompose,
    generator,
    group_elements,
    inverse,
    is_in_parabolic,
    is_right_descent,
    longest_element,
    product,
    right_coset_min,
)

DEFAULT_BFS_CAP = 10**5


@dataclass(frozen=True)
class ParabolicDescriptor:
    """The subgroup conjugator * W_core * conjugator^-1.

    The conjugator is kept minimal in its coset conjugator * W_core, which
    makes the description unique.
    """

    conjugator: Element
    core: GeneratorSubset


def make_descriptor(g: CoxeterGraph, u: Element, core: GeneratorSubset) -> ParabolicDescriptor:
    v, _ = right_coset_min(g, u, core)
    return ParabolicDescriptor(v, core)


def descriptor_contains(g: CoxeterGraph, d: ParabolicDescriptor, h: Element) -> bool:
    uinv = inverse(g, d.conjugator)
    return is_in_parabolic(g, product(g, uinv, h, d.conjugator), d.core)


def descriptor_elements(g: CoxeterGraph, d: ParabolicDescriptor, cap: int = 10**4) -> set[Element]:
    """All elements of the described subgroup; the core must be of finite type."""
    uinv = inverse(g, d.conjugator)
    return {product(g, d.conjugator, y, uinv) for y in group_elements(g, d.core, cap=cap)}


def intersect_parabolic_conjugate(
    g: CoxeterGraph, x: GeneratorSubset, x_prime: GeneratorSubset, w: Element
) -> ParabolicDescriptor:
    """W_x intersected with w W_x' w^-1.

    With w = u0 v u0' and v minimal in W_x w W_x', the intersection is
    u0 W_Y u0^-1 where Y = (v x' v^-1) ∩ x.
    """
    dec = double_coset_decompose(g, w, x, x_prime)
    vinv = inverse(g, dec.v)
    core = 0
    for s in x_prime:
        c = product(g, dec.v, generator(s), vinv)
        if c.length == 1 and c.word[0] in x:
            core |= 1 << c.word[0]
    return make_descriptor(g, dec.u, GeneratorSubset(core))


def quasi_center(g: CoxeterGraph, x: GeneratorSubset) -> list[Element]:
    """Generators of QZ(W_x, x): the longest element of each finite component.
    Infinite irreducible components contribute nothing."""
    return [longest_element(g, comp) for comp, ctype in components_with_types(g, x) if ctype.is_finite]


def normalizer_decompose(
    g: CoxeterGraph, x: GeneratorSubset, w: Element
) -> tuple[Element, Element] | None:
    """Split w = v u with u in W_x and v minimal in w W_x.

    Returns (v, u) when w normalizes W_x, which happens exactly when v
    permutes x; None otherwise.
    """
    v, u = right_coset_min(g, w, x)
    if simple_image_set(g, v, x) == x:
        return v, u
    return None


def normalizer_membership(g: CoxeterGraph, x: GeneratorSubset, w: Element) -> bool:
    return normalizer_decompose(g, x, w) is not None


def quasi_centralizer(g: CoxeterGraph, x: GeneratorSubset) -> GeneratorSubset:
    """Y with {w : w x w^-1 = x} = W_Y, valid when every component of x is infinite."""
    x0, _ = decompose_subset(g, x)
    if x0:
        raise PreconditionError(
            f"{{{g.format_subset(x)}}} has finite components {{{g.format_subset(x0)}}}; "
            "no closed form for its quasi-centralizer"
        )
    return perpendicular_set(g, x)


def quasi_centralizer_membership(g: CoxeterGraph, x: GeneratorSubset, w: Element) -> bool:
    """w x w^-1 = x as a set (any x)."""
    winv = inverse(g, w)
    image = 0
    for s in x:
        c = product(g, w, generator(s), winv)
        if c.length != 1:
            return False
        image |= 1 << c.word[0]
    return image == x.bits


def commensurator_membership(g: CoxeterGraph, x: GeneratorSubset, w: Element) -> bool:
    """Whether w commensurates W_x.

    Take v minimal in W_x w W_x; w is in the commensurator iff v permutes
    the infinite-type part of x.
    """
    _, xinf = decompose_subset(g, x)
    v = double_coset_decompose(g, w, x, x).v
    return simple_image_set(g, v, xinf) == xinf


@dataclass(frozen=True)
class ElementaryConjugation:
    t: int
    x: GeneratorSubset
    c: Element
    x_next: GeneratorSubset


@dataclass(frozen=True)
class ConjugationWitness:
    steps: tuple[ElementaryConjugation, ...]
    w: Element

    @property
    def source(self) -> GeneratorSubset | None:
        return self.steps[0].x if self.steps else None

    @property
    def target(self) -> GeneratorSubset | None:
        return self.steps[-1].x_next if self.steps else None


def component_of(g: CoxeterGraph, x: GeneratorSubset, t: int) -> GeneratorSubset:
    for comp in connected_components(g, x.with_(t)):
        if t in comp:
            return comp
    raise AssertionError("unreachable")


def is_admissible(g: CoxeterGraph, x: GeneratorSubset, t: int) -> bool:
    if t in x:
        raise PreconditionError(f"{g.generators[t]} lies in {{{g.format_subset(x)}}}")
    return classify_component(g, component_of(g, x, t)).is_finite


def elementary_conjugation(g: CoxeterGraph, x: GeneratorSubset, t: int) -> ElementaryConjugation:
    """c(t, x) = w_{Y0} w_{X0} together with the subset it carries x onto."""
    memo = g._cache.setdefault("elementary", {})
    key = (x.bits, t)
    if key in memo:
        return memo[key]
    if not is_admissible(g, x, t):
        raise PreconditionError(f"{g.generators[t]} is not {{{g.format_subset(x)}}}-admissible")
    y0 = component_of(g, x, t)
    x0 = y0.without(t)
    c = product(g, longest_element(g, y0), longest_element(g, x0))
    if any(is_right_descent(g, c, s) for s in x):
        raise AssertionError("c(t, X) has a right descent in X")
    x_next = simple_image_set(g, c, x)
    if x_next is None:
        raise AssertionError("c(t, X) does not map E_X onto simple roots")
    ec = memo[key] = ElementaryConjugation(t, x, c, x_next)
    return ec


def admissible_edges(g: CoxeterGraph, x: GeneratorSubset) -> list[ElementaryConjugation]:
    return [elementary_conjugation(g, x, t) for t in range(g.rank) if t not in x and is_admissible(g, x, t)]


def _witness(g: CoxeterGraph, steps: list[ElementaryConjugation]) -> ConjugationWitness:
    return ConjugationWitness(tuple(steps), product(g, IDENTITY, *(st.c for st in reversed(steps))))


def conjugation_witness(
    g: CoxeterGraph, x: GeneratorSubset, x_prime: GeneratorSubset, cap: int = DEFAULT_BFS_CAP
) -> ConjugationWitness | None:
    """Shortest chain of elementary conjugations from x to x_prime, or None."""
    if len(x) != len(x_prime):
        return None
    parent: dict[GeneratorSubset, ElementaryConjugation | None] = {x: None}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        if cur == x_prime:
            steps = []
            while parent[cur] is not None:
                step = parent[cur]
                steps.append(step)
                cur = step.x
            return _witness(g, steps[::-1])
        for ec in admissible_edges(g, cur):
            if ec.x_next not in parent:
                parent[ec.x_next] = ec
                if len(parent) > cap:
                    raise BudgetExceeded(f"groupoid search exceeded {cap} nodes")
                queue.append(ec.x_next)
    return None


def factor_witness(
    g: CoxeterGraph, x: GeneratorSubset, w: Element, budget: int = DEFAULT_BFS_CAP
) -> ConjugationWitness | None:
    """Factor w into elementary conjugations starting at x.

    Returns None when w does not send E_x onto a set of simple roots. The
    search peels c(t, X) off the right of w while lengths stay additive,
    trying right descents of the remainder first.
    """
    target = simple_image_set(g, w, x)
    if target is None:
        return None
    visited = 0

    def search(cur: GeneratorSubset, rest: Element) -> list[ElementaryConjugation] | None:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"witness search exceeded {budget} nodes")
        if rest.is_identity():
            return [] if cur == target else None
        order = sorted(
            (t for t in range(g.rank) if t not in cur),
            key=lambda t: (not is_right_descent(g, rest, t), t),
        )
        for t in order:
            if not is_admissible(g, cur, t):
                continue
            ec = elementary_conjugation(g, cur, t)
            remainder = product(g, rest, inverse(g, ec.c))
            if remainder.length != rest.length - ec.c.length:
                continue
            tail = search(ec.x_next, remainder)
            if tail is not None:
                return [ec] + tail
        return None

    steps = search(x, w)
    if steps is None:
        return None
    wit = _witness(g, steps)
    if wit.w != w:
        raise AssertionError("witness product does not reproduce w")
    x0, _ = decompose_subset(g, x)
    if not x0:
        perp = perpendicular_set(g, x)
        for st in wit.steps:
            if st.c != generator(st.t) or st.t not in perp:
                raise AssertionError("step on an all-infinite subset is not a commuting generator")
    return wit
