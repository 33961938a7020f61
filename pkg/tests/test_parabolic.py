import pytest

from coxcomm.errors import BudgetExceeded, PreconditionError
from coxcomm.graph import EMPTY, GeneratorSubset, analyze_parabolic
from coxcomm.parabolic import (
    admissible_edges,
    commensurator_membership,
    conjugation_witness,
    descriptor_contains,
    descriptor_elements,
    elementary_conjugation,
    factor_witness,
    intersect_parabolic_conjugate,
    is_admissible,
    normalizer_decompose,
    normalizer_membership,
    quasi_center,
    quasi_centralizer,
    quasi_centralizer_membership,
)
from coxcomm.roots import simple_image_set
from coxcomm.verify import replay_witness
from coxcomm.words import (
    IDENTITY,
    ball,
    format_word,
    generator,
    group_elements,
    inverse,
    is_in_parabolic,
    product,
)

from conftest import graph, subset, word


def _subsets(g):
    return [GeneratorSubset(b) for b in range(1 << g.rank)]


def _conj_image(g, w, x):
    """Set of w s w^-1 for s in x, or None if one of them is not a generator."""
    winv = inverse(g, w)
    out = set()
    for s in x:
        c = product(g, w, generator(s), winv)
        if c.length != 1:
            return None
        out.add(c.word[0])
    return out


def test_intersection_example():
    g = graph("g1")
    d = intersect_parabolic_conjugate(g, subset(g, "a"), subset(g, "b"), word(g, "a b a"))
    assert d.conjugator == IDENTITY and d.core == subset(g, "a")


def test_intersection_against_subgroup_sets():
    g = graph("g5")
    elems = group_elements(g)
    subgroup = {x: set(group_elements(g, x)) for x in _subsets(g)}
    for w in elems[::3]:
        winv = inverse(g, w)
        for x in _subsets(g):
            for xp in _subsets(g):
                want = subgroup[x] & {product(g, w, h, winv) for h in subgroup[xp]}
                d = intersect_parabolic_conjugate(g, x, xp, w)
                assert descriptor_elements(g, d) == want
                assert all(descriptor_contains(g, d, h) == (h in want) for h in elems[::5])


def test_quasi_center_examples():
    g1, g4 = graph("g1"), graph("g4")
    assert [format_word(g1, w) for w in quasi_center(g1, g1.full)] == ["a b a"]
    assert [format_word(g4, w) for w in quasi_center(g4, g4.full)] == ["c"]
    assert quasi_center(graph("g2"), graph("g2").full) == []


@pytest.mark.parametrize("name", ["g1", "g5", "b3", "i2_5"])
def test_normalizer_against_subgroup_conjugation(name):
    g = graph(name)
    elems = group_elements(g)
    for x in _subsets(g):
        sub = set(group_elements(g, x))
        for w in elems:
            winv = inverse(g, w)
            want = {product(g, w, h, winv) for h in sub} == sub
            assert normalizer_membership(g, x, w) == want
            dec = normalizer_decompose(g, x, w)
            if dec is not None:
                v, u = dec
                assert product(g, v, u) == w and is_in_parabolic(g, u, x)
                assert _conj_image(g, v, x) == set(x)


def test_normalizer_examples():
    g4, g3 = graph("g4"), graph("g3")
    assert normalizer_membership(g4, subset(g4, "a,b"), word(g4, "c"))
    assert not normalizer_membership(g3, subset(g3, "a,b"), word(g3, "c"))
    v, u = normalizer_decompose(g4, subset(g4, "a,b"), word(g4, "c a b"))
    assert (format_word(g4, v), format_word(g4, u)) == ("c", "a b")


@pytest.mark.parametrize("name", ["g2", "g3", "g4", "g6", "g7", "g8"])
def test_quasi_centralizer_against_ball(name):
    g = graph(name)
    for x in _subsets(g):
        a = analyze_parabolic(g, x)
        if a.x0:
            with pytest.raises(PreconditionError):
                quasi_centralizer(g, x)
            continue
        y = quasi_centralizer(g, x)
        for w in ball(g, 6):
            fixed = _conj_image(g, w, x) == set(x)
            assert quasi_centralizer_membership(g, x, w) == fixed
            assert is_in_parabolic(g, w, y) == fixed


def test_commensurator_examples():
    g4, g3 = graph("g4"), graph("g3")
    assert commensurator_membership(g4, subset(g4, "a,b"), word(g4, "c a b"))
    assert not commensurator_membership(g3, subset(g3, "a,b"), word(g3, "c"))
    assert commensurator_membership(g3, subset(g3, "a,b"), word(g3, "a b a"))


def test_finite_parabolics_are_commensurated_by_everything():
    for name in ("g2", "g3", "g6"):
        g = graph(name)
        for x in _subsets(g):
            if analyze_parabolic(g, x).xinf:
                continue
            assert all(commensurator_membership(g, x, w) for w in ball(g, 5))


def test_elementary_conjugation_example():
    g = graph("g1")
    ec = elementary_conjugation(g, subset(g, "a"), 1)
    assert format_word(g, ec.c) == "a b"
    assert ec.x_next == subset(g, "b")


def test_admissibility():
    g = graph("g3")
    assert not is_admissible(g, subset(g, "a"), 1)
    assert is_admissible(g, subset(g, "a"), 2)
    with pytest.raises(PreconditionError):
        is_admissible(g, subset(g, "a"), 0)
    with pytest.raises(PreconditionError):
        elementary_conjugation(g, subset(g, "a"), 1)
    assert {ec.t for ec in admissible_edges(g, subset(g, "a"))} == {2}


def test_witness_examples():
    g1, g3 = graph("g1"), graph("g3")
    wit = conjugation_witness(g1, subset(g1, "a"), subset(g1, "b"))
    assert [format_word(g1, st.c) for st in wit.steps] == ["a b"]
    assert replay_witness(g1, wit, subset(g1, "a"), subset(g1, "b")) == []
    assert conjugation_witness(g3, subset(g3, "a,b"), subset(g3, "b,c")) is None
    same = conjugation_witness(g3, subset(g3, "a"), subset(g3, "a"))
    assert same.steps == () and same.w == IDENTITY


@pytest.mark.parametrize("name", ["g5", "b3", "h3"])
def test_witness_exists_iff_conjugate(name):
    g = graph(name)
    elems = group_elements(g)
    for x in _subsets(g):
        for xp in _subsets(g):
            conj = any(_conj_image(g, w, x) == set(xp) for w in elems)
            wit = conjugation_witness(g, x, xp)
            assert (wit is not None) == conj
            if wit is not None:
                assert replay_witness(g, wit, x, xp) == []


@pytest.mark.parametrize("name", ["g5", "b3", "g6", "g7"])
def test_factor_witness_replays(name):
    g = graph(name)
    elems = list(ball(g, 6))
    for x in _subsets(g):
        for w in elems:
            target = simple_image_set(g, w, x)
            wit = factor_witness(g, x, w)
            if target is None:
                assert wit is None
                continue
            assert wit.w == w
            assert replay_witness(g, wit, x, target, w) == []


def test_witness_budget():
    g = graph("g6")
    with pytest.raises(BudgetExceeded):
        factor_witness(g, EMPTY, max(ball(g, 8), key=lambda w: w.length), budget=1)
