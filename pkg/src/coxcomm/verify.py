"""Brute-force oracles and cross-check suites.

Every check compares an implementation route against an oracle that does
not call it. Each law accepts an ``oracle_graph``: the oracle side is
evaluated there. Passing a graph with one label altered is how negative
controls are built, so a suite that cannot fail shows up as a red cell.

Config format (one directive per line, ``#`` comments)::

    graph G3 g3.cox                   # path relative to the config file
    graph G3bad g3.cox relabel b c 2  # copy with m_bc replaced
    check commensurator G3 * radius=8
    check commensurator G3 a,b radius=4 oracle=G3bad expect=fail

Subset ``*`` expands to one report per subset (laws skip subsets outside
their hypotheses); ``-`` is the empty set.
"""

from __future__ import annotations

import json
import shlex
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .errors import CoxeterError, PreconditionError
from .graph import (
    EMPTY,
    CoxeterGraph,
    GeneratorSubset,
    analyze_parabolic,
    classify_component,
    connected_components,
    decompose_subset,
    is_finite_type,
    load_graph,
    parse_label,
    perpendicular_set,
)
from .parabolic import (
    ConjugationWitness,
    conjugation_witness,
    descriptor_elements,
    factor_witness,
    intersect_parabolic_conjugate,
    normalizer_decompose,
    quasi_centralizer,
    commensurator_membership,
)
from .reflection import is_supported
from .roots import root_descent, root_length, simple_image_set, simple_image_set_by_roots
from .words import (
    DEFAULT_BALL_CAP,
    IDENTITY,
    Element,
    ball,
    double_coset_decompose,
    format_word,
    gen_mul,
    generator,
    group_elements,
    inverse,
    is_in_parabolic,
    is_left_descent,
    is_right_descent,
    longest_element,
    mul_gen,
    normal_form,
    product,
    right_coset_min,
    set_word_engine,
    support,
)

DEFAULT_RADIUS = 8
DEFAULT_ORDER_CAP = 10**4
MAX_FAILURES_KEPT = 50

LAWS = (
    "commensurator",
    "normalizer",
    "quasiCentralizer",
    "dualLength",
    "lemma31Uniqueness",
    "intersection",
    "longestElement",
    "witness",
    "classification",
    "growth",
)


@dataclass
class CheckReport:
    check: str
    graph: str
    subset: str
    radius: int | None = None
    order: int | None = None
    elements_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0
    expect: str = "pass"
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def ok(self) -> bool:
        """Outcome matches expectation (negative controls must fail)."""
        return self.passed == (self.expect == "pass")

    def fail(self, **record) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(record)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL({self.failure_count})"
        tag = "" if self.ok else "  <-- unexpected"
        size = f"r={self.radius}" if self.radius is not None else f"|W|={self.order}"
        return f"{status:10} {self.check:18} {self.graph:10} {{{self.subset}}} {size} n={self.elements_checked}{tag}"


def _as(og: CoxeterGraph, w: Element) -> Element:
    return normal_form(og, w.word)


def _fmt(g: CoxeterGraph, w: Element) -> str:
    return format_word(g, w)


# ---------------------------------------------------------------- oracles


def brute_force_intersection(
    g: CoxeterGraph,
    x: GeneratorSubset,
    x_prime: GeneratorSubset,
    w: Element,
    cap: int = DEFAULT_ORDER_CAP,
) -> set[Element]:
    """{h in W : h in W_x and w^-1 h w in W_x'} by scanning the whole group."""
    winv = inverse(g, w)
    return {
        h for h in group_elements(g, cap=cap) if support(h) <= x and support(product(g, winv, h, w)) <= x_prime
    }


def normalizes_directly(g: CoxeterGraph, x: GeneratorSubset, w: Element) -> bool:
    """w W_x w^-1 = W_x, tested on generator images in both directions."""
    winv = inverse(g, w)
    for s in x:
        if not support(product(g, w, generator(s), winv)) <= x:
            return False
        if not support(product(g, winv, generator(s), w)) <= x:
            return False
    return True


def permutes_directly(g: CoxeterGraph, x: GeneratorSubset, w: Element) -> bool:
    """w x w^-1 = x as a set of generators."""
    winv = inverse(g, w)
    image = set()
    for s in x:
        c = product(g, w, generator(s), winv)
        if c.length != 1:
            return False
        image.add(c.word[0])
    return image == set(x)


def double_coset_closure(
    g: CoxeterGraph, w: Element, x: GeneratorSubset, x_prime: GeneratorSubset, max_length: int | None = None
) -> set[Element]:
    """W_x w W_x' (intersected with the ball of radius max_length) by closing
    under single-generator multiplications."""
    seen = {w}
    stack = [w]
    while stack:
        y = stack.pop()
        nbrs = [gen_mul(g, s, y) for s in x] + [mul_gen(g, y, s) for s in x_prime]
        for z in nbrs:
            if z not in seen and (max_length is None or z.length <= max_length):
                seen.add(z)
                stack.append(z)
    return seen


def growth_probe(
    g: CoxeterGraph, x: GeneratorSubset, target: GeneratorSubset, radii: Iterable[int], cap: int = DEFAULT_BALL_CAP
) -> list[int]:
    """Number of cosets w W_target met by w in W_x of length <= r, per radius.

    Weak evidence that W_target has infinite index in W_x; not a proof.
    """
    radii = sorted(radii)
    counts = []
    reps: set[Element] = set()
    elems = list(ball(g, radii[-1] if radii else 0, cap=cap, subset=x))
    i = 0
    for r in radii:
        while i < len(elems) and elems[i].length <= r:
            reps.add(right_coset_min(g, elems[i], target)[0])
            i += 1
        counts.append(len(reps))
    return counts


# ------------------------------------------------------------------ laws


def _law_commensurator(rep, g, og, x, radius, cap, **_):
    a = analyze_parabolic(og, x)
    rep.details["commensurator"] = og.format_subset(a.commensurator)
    for w in ball(g, radius, cap=cap):
        rep.elements_checked += 1
        lhs = commensurator_membership(g, x, w)
        rhs = is_in_parabolic(og, _as(og, w), a.commensurator)
        if lhs != rhs:
            rep.fail(element=_fmt(g, w), expected=rhs, actual=lhs)


def _law_normalizer(rep, g, og, x, radius, cap, **_):
    for w in ball(g, radius, cap=cap):
        rep.elements_checked += 1
        dec = normalizer_decompose(g, x, w)
        direct = normalizes_directly(og, x, _as(og, w))
        if (dec is not None) != direct:
            rep.fail(element=_fmt(g, w), expected=direct, actual=dec is not None)
            continue
        if dec is None:
            continue
        v, u = dec
        problems = []
        if product(og, _as(og, v), _as(og, u)) != _as(og, w):
            problems.append("v*u != w")
        if not permutes_directly(og, x, _as(og, v)):
            problems.append("v x v^-1 != x")
        if any(root_or_word_descent(og, _as(og, v), s) for s in x):
            problems.append("l(vs) < l(v) for some s in x")
        if not support(_as(og, u)) <= x:
            problems.append("u not in W_x")
        if permutes_directly(og, x, _as(og, w)) and not permutes_directly(og, x, _as(og, u)):
            problems.append("u x u^-1 != x although w x w^-1 = x")
        if problems:
            rep.fail(element=_fmt(g, w), expected="v.u decomposition", actual="; ".join(problems),
                     v=_fmt(g, v), u=_fmt(g, u))


def root_or_word_descent(g: CoxeterGraph, w: Element, s: int) -> bool:
    if is_supported(g):
        return root_descent(g, w, s)
    return is_right_descent(g, w, s)


def _law_quasi_centralizer(rep, g, og, x, radius, cap, **_):
    y = quasi_centralizer(og, x)
    rep.details["quasiCentralizer"] = og.format_subset(y)
    for w in ball(g, radius, cap=cap):
        rep.elements_checked += 1
        lhs = permutes_directly(g, x, w)
        rhs = is_in_parabolic(og, _as(og, w), y)
        if lhs != rhs:
            rep.fail(element=_fmt(g, w), expected=rhs, actual=lhs)


def _law_dual_length(rep, g, og, x, radius, cap, **_):
    if not is_supported(og):
        raise PreconditionError("dualLength needs labels in {2,3,4,5,6,inf}")
    # the Tits side must not share arithmetic with the root side
    g = CoxeterGraph(g.generators, g.matrix)
    set_word_engine(g, "braid")
    n = g.rank
    for w in ball(g, radius, cap=cap):
        rep.elements_checked += 1
        if root_length(og, w.word) != w.length:
            rep.fail(element=_fmt(g, w), expected=w.length, actual=root_length(og, w.word))
        for s in range(n):
            word = w.word + (s,)
            tits = normal_form(g, word).length
            if root_length(og, word) != tits:
                rep.fail(element=_fmt(g, w) + f" * {g.generators[s]}", expected=tits, actual=root_length(og, word))
            if root_descent(og, w.word, s) != is_right_descent(g, w, s):
                rep.fail(element=_fmt(g, w), generator=g.generators[s],
                         expected=is_right_descent(g, w, s), actual=root_descent(og, w.word, s))


def _check_lemma31_pair(rep, g, og, x, xp, elements, max_length):
    minimum: dict[Element, Element | None] = {}
    for w in elements:
        ow = _as(og, w)
        if ow not in minimum:
            coset = double_coset_closure(og, ow, x, xp, max_length)
            shortest = min(y.length for y in coset)
            minima = [y for y in coset if y.length == shortest]
            found = minima[0] if len(minima) == 1 else None
            if found is None:
                rep.fail(element=_fmt(g, w), xprime=og.format_subset(xp), expected="one minimal element",
                         actual=[_fmt(og, m) for m in minima])
            for y in coset:
                minimum[y] = found
        vmin = minimum[ow]
        if vmin is None:
            continue
        rep.elements_checked += 1
        d = double_coset_decompose(g, w, x, xp)
        problems = []
        if _as(og, d.v) != vmin:
            problems.append(f"v={_fmt(g, d.v)} but minimum is {_fmt(og, vmin)}")
        if product(og, _as(og, d.u), _as(og, d.v), _as(og, d.u_prime)) != ow:
            problems.append("u v u' != w")
        if d.u.length + d.v.length + d.u_prime.length != w.length:
            problems.append("lengths not additive")
        if not (support(d.u) <= x and support(d.u_prime) <= xp):
            problems.append("factor outside its parabolic")
        if problems:
            rep.fail(element=_fmt(g, w), xprime=og.format_subset(xp), expected="minimal v",
                     actual="; ".join(problems))


def all_subsets(g: CoxeterGraph) -> list[GeneratorSubset]:
    return [GeneratorSubset(b) for b in range(1 << g.rank)]


def _law_lemma31(rep, g, og, x, radius, cap, xprime=None, order_cap=DEFAULT_ORDER_CAP, **_):
    primes = all_subsets(g) if xprime == "*" else [x if xprime is None else xprime]
    if radius is None:
        elements = group_elements(g, cap=order_cap)
        rep.order = len(elements)
    else:
        elements = list(ball(g, radius, cap=cap))
    for xp in primes:
        _check_lemma31_pair(rep, g, og, x, xp, elements, radius)


def _law_intersection(rep, g, og, x, radius, cap, xprime=None, order_cap=DEFAULT_ORDER_CAP, **_):
    primes = all_subsets(g) if xprime in (None, "*") else [xprime]
    elements = group_elements(g, cap=order_cap)
    rep.order = len(elements)
    rep.radius = None
    for xp in primes:
        for w in elements:
            rep.elements_checked += 1
            d = intersect_parabolic_conjugate(g, x, xp, w)
            got = {_as(og, h) for h in descriptor_elements(g, d, cap=order_cap)}
            want = brute_force_intersection(og, x, xp, _as(og, w), cap=order_cap)
            if got != want:
                rep.fail(element=_fmt(g, w), xprime=g.format_subset(xp),
                         expected=sorted(_fmt(og, h) for h in want), actual=sorted(_fmt(og, h) for h in got))


def _law_longest(rep, g, og, x, radius, cap, order_cap=DEFAULT_ORDER_CAP, **_):
    if not is_finite_type(g, x):
        raise PreconditionError("longestElement needs a finite-type subset")
    w0 = longest_element(g, x)
    rep.details["longest"] = _fmt(g, w0)
    ow0 = _as(og, w0)
    if product(og, ow0, ow0) != IDENTITY:
        rep.fail(element=_fmt(g, w0), expected="w0^2 = 1", actual=_fmt(og, product(og, ow0, ow0)))
    if not permutes_directly(og, x, ow0):
        rep.fail(element=_fmt(g, w0), expected="w0 x w0 = x", actual="not a permutation of x")
    for s in x:
        if not (is_left_descent(og, ow0, s) and is_right_descent(og, ow0, s)):
            rep.fail(element=_fmt(g, w0), expected=f"{og.generators[s]} a two-sided descent", actual=False)
    subgroup = group_elements(g, x, cap=order_cap)
    rep.order = len(subgroup)
    for w in subgroup:
        rep.elements_checked += 1
        ow = _as(og, w)
        want = ow0.length - ow.length
        for got in (product(og, ow, ow0).length, product(og, ow0, ow).length):
            if got != want:
                rep.fail(element=_fmt(g, w), expected=want, actual=got)


def replay_witness(
    g: CoxeterGraph, wit: ConjugationWitness, x: GeneratorSubset, x_prime: GeneratorSubset, w: Element | None = None
) -> list[str]:
    """Problems found while replaying a witness in g (empty list = sound)."""
    problems = []
    cur = x
    for i, st in enumerate(wit.steps):
        if st.x != cur:
            problems.append(f"step {i} starts at the wrong subset")
        if st.t in st.x:
            problems.append(f"step {i}: t lies in X")
        c = _as(g, st.c)
        if simple_image_set(g, c, st.x) != st.x_next:
            problems.append(f"step {i}: c(t,X) does not carry X to X_next")
        cur = st.x_next
    if cur != x_prime:
        problems.append("chain does not end at the target subset")
    replay = product(g, IDENTITY, *(_as(g, st.c) for st in reversed(wit.steps)))
    if replay != _as(g, wit.w):
        problems.append("product of steps differs from witness element")
    if w is not None and _as(g, w) != replay:
        problems.append("witness element differs from the requested element")
    if simple_image_set(g, replay, x) != x_prime:
        problems.append("length-side image test fails")
    if is_supported(g) and simple_image_set_by_roots(g, replay, x) != x_prime:
        problems.append("root-side image test fails")
    return problems


def _law_witness(rep, g, og, x, radius, cap, **_):
    x0, _ = decompose_subset(g, x)
    perp = perpendicular_set(og, x)
    for xp in all_subsets(g):
        if len(xp) != len(x):
            continue
        wit = conjugation_witness(g, x, xp)
        if wit is None:
            continue
        rep.elements_checked += 1
        problems = replay_witness(og, wit, x, xp)
        if problems:
            rep.fail(target=g.format_subset(xp), expected="sound witness", actual="; ".join(problems))
    for w in ball(g, radius, cap=cap):
        wit = factor_witness(g, x, w)
        if wit is None:
            continue
        rep.elements_checked += 1
        problems = replay_witness(og, wit, x, simple_image_set(g, w, x), w)
        if not x0:
            for st in wit.steps:
                if _as(og, st.c) != generator(st.t) or st.t not in perp:
                    problems.append(f"step t={g.generators[st.t]} is not a commuting generator")
        if problems:
            rep.fail(element=_fmt(g, w), expected="sound witness", actual="; ".join(problems))


def _law_classification(rep, g, og, x, radius, cap, order_cap=DEFAULT_ORDER_CAP, **_):
    if len(connected_components(g, x)) != 1:
        raise PreconditionError("classification needs a connected subset")
    ctype = classify_component(g, x)
    rep.details["type"] = ctype.kind
    if not ctype.is_finite:
        raise PreconditionError("classification check needs a finite type")
    counted = len(group_elements(og, x, cap=order_cap))
    rep.order = counted
    rep.elements_checked = counted
    if counted != ctype.order:
        rep.fail(element=g.format_subset(x), expected=ctype.order, actual=counted)


def _law_growth(rep, g, og, x, radius, cap, target=EMPTY, **_):
    radii = list(range(0, (radius if radius is not None else DEFAULT_RADIUS) + 1))
    counts = growth_probe(g, x, target, radii, cap=cap)
    rep.details["target"] = g.format_subset(target)
    rep.details["counts"] = counts
    rep.elements_checked = len(counts)
    if any(b < a for a, b in zip(counts, counts[1:])):
        rep.fail(expected="nondecreasing", actual=counts)
    rises = sum(1 for a, b in zip(counts, counts[1:]) if b > a)
    if rises < 3:
        rep.fail(expected="strict increase at >= 3 radii", actual=counts)


_LAW_FUNCS: dict[str, Callable] = {
    "commensurator": _law_commensurator,
    "normalizer": _law_normalizer,
    "quasiCentralizer": _law_quasi_centralizer,
    "dualLength": _law_dual_length,
    "lemma31Uniqueness": _law_lemma31,
    "intersection": _law_intersection,
    "longestElement": _law_longest,
    "witness": _law_witness,
    "classification": _law_classification,
    "growth": _law_growth,
}


def _applies(law: str, g: CoxeterGraph, x: GeneratorSubset) -> bool:
    """Whether subset x meets the law's hypotheses (used when expanding ``*``)."""
    if law == "quasiCentralizer":
        return not decompose_subset(g, x)[0]
    if law == "longestElement":
        return is_finite_type(g, x)
    if law == "classification":
        return len(connected_components(g, x)) == 1 and is_finite_type(g, x)
    if law == "growth":
        return bool(x) and not decompose_subset(g, x)[0]
    return True


def ball_check(
    g: CoxeterGraph,
    x: GeneratorSubset,
    radius: int | None,
    law: str,
    *,
    oracle_graph: CoxeterGraph | None = None,
    graph_name: str = "",
    expect: str = "pass",
    cap: int = DEFAULT_BALL_CAP,
    order_cap: int = DEFAULT_ORDER_CAP,
    **options,
) -> CheckReport:
    """Evaluate both sides of a law on every relevant element and report mismatches."""
    if law not in _LAW_FUNCS:
        raise ValueError(f"unknown law {law!r}; expected one of {', '.join(LAWS)}")
    og = g if oracle_graph is None else oracle_graph
    if og.generators != g.generators:
        raise PreconditionError("oracle graph must have the same generators")
    rep = CheckReport(law, graph_name or "", g.format_subset(x), radius=radius, expect=expect)
    if "xprime" in options and isinstance(options["xprime"], GeneratorSubset):
        rep.details["xprime"] = g.format_subset(options["xprime"])
    _LAW_FUNCS[law](rep, g, og, x, radius, cap, order_cap=order_cap, **options)
    return rep


# ---------------------------------------------------------------- config


@dataclass
class _Cell:
    law: str
    graph: str
    subset: str
    radius: int | None
    options: dict
    lineno: int


class ConfigError(CoxeterError, ValueError):
    exit_code = 2


def parse_config(text: str, base: Path | str = ".") -> tuple[dict[str, CoxeterGraph], list[_Cell]]:
    base = Path(base)
    graphs: dict[str, CoxeterGraph] = {}
    cells: list[_Cell] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = shlex.split(line)
        except ValueError as exc:
            raise ConfigError(f"config line {lineno}: {exc}") from None
        kind = toks[0]
        if kind == "graph":
            if len(toks) not in (3, 7) or (len(toks) == 7 and toks[3] != "relabel"):
                raise ConfigError(f"config line {lineno}: expected 'graph NAME PATH [relabel s t m]'")
            path = base / toks[2]
            try:
                g = load_graph(path)
            except OSError as exc:
                raise ConfigError(f"config line {lineno}: cannot read {path}: {exc}") from None
            if len(toks) == 7:
                g = g.with_label(toks[4], toks[5], parse_label(toks[6], lineno))
            graphs[toks[1]] = g
        elif kind == "check":
            if len(toks) < 4:
                raise ConfigError(f"config line {lineno}: expected 'check LAW GRAPH SUBSET [key=value ...]'")
            law, gname, subset = toks[1], toks[2], toks[3]
            if law not in _LAW_FUNCS:
                raise ConfigError(f"config line {lineno}: unknown law {law!r}")
            if gname not in graphs:
                raise ConfigError(f"config line {lineno}: graph {gname!r} not declared")
            opts = {}
            for kv in toks[4:]:
                if "=" not in kv:
                    raise ConfigError(f"config line {lineno}: malformed option {kv!r}")
                k, v = kv.split("=", 1)
                opts[k] = v
            radius: int | None = DEFAULT_RADIUS
            if "radius" in opts:
                rv = opts.pop("radius")
                try:
                    radius = None if rv in ("full", "none") else int(rv)
                except ValueError:
                    raise ConfigError(f"config line {lineno}: bad radius {rv!r}") from None
            for k in opts:
                if k not in ("xprime", "oracle", "expect", "target"):
                    raise ConfigError(f"config line {lineno}: unknown option {k!r}")
            if opts.get("oracle", gname) not in graphs:
                raise ConfigError(f"config line {lineno}: oracle graph {opts['oracle']!r} not declared")
            if opts.get("expect", "pass") not in ("pass", "fail"):
                raise ConfigError(f"config line {lineno}: expect must be pass or fail")
            cells.append(_Cell(law, gname, subset, radius, opts, lineno))
        else:
            raise ConfigError(f"config line {lineno}: unknown directive {kind!r}")
    return graphs, cells


def run_cells(
    graphs: dict[str, CoxeterGraph],
    cells: Iterable[_Cell],
    cap: int = DEFAULT_BALL_CAP,
    order_cap: int = DEFAULT_ORDER_CAP,
    radius_override: int | None = None,
) -> list[CheckReport]:
    reports = []
    for cell in cells:
        g = graphs[cell.graph]
        og = graphs[cell.options.get("oracle", cell.graph)]
        radius = cell.radius if radius_override is None or cell.radius is None else min(cell.radius, radius_override)
        if cell.subset == "*":
            xs = [x for x in all_subsets(g) if _applies(cell.law, g, x)]
        else:
            xs = [g.parse_subset(cell.subset)]
        extra = {}
        if "xprime" in cell.options:
            xp = cell.options["xprime"]
            extra["xprime"] = "*" if xp == "*" else g.parse_subset(xp)
        if "target" in cell.options:
            extra["target"] = g.parse_subset(cell.options["target"])
        for x in xs:
            reports.append(
                ball_check(
                    g, x, radius, cell.law,
                    oracle_graph=og,
                    graph_name=cell.graph if og is g else f"{cell.graph}/{cell.options['oracle']}",
                    expect=cell.options.get("expect", "pass"),
                    cap=cap,
                    order_cap=order_cap,
                    **extra,
                )
            )
    return reports


def run_suite(config: str | Path, **kwargs) -> list[CheckReport]:
    """Run every cell of a config file, in file order."""
    path = Path(config)
    graphs, cells = parse_config(path.read_text(encoding="utf-8"), base=path.parent)
    return run_cells(graphs, cells, **kwargs)


def default_config_path() -> Path:
    return Path(__file__).parent / "data" / "default.cfg"
