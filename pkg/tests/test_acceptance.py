"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every check is exact. Counterexamples, when any, are listed in the
assertion message.
"""

import time

import pytest

from coxcomm.graph import decompose_subset, is_finite_type
from coxcomm.verify import LAWS, all_subsets, ball_check, default_config_path, parse_config, run_cells

from conftest import CORPUS, graph

FINITE = ("g1", "g5", "b3", "i2_5")
SUPPORTED = CORPUS + ("b3", "i2_5", "h3", "e6")
EVERYTHING = SUPPORTED + ("a1", "b2", "i2_3", "i2_4", "i2_6", "i2_7", "i2_8")


@pytest.fixture
def announce(capsys):
    def emit(number, title, reports, extra=""):
        bad = [r for r in reports if not r.ok]
        checked = sum(r.elements_checked for r in reports)
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {number:2d} {status}: {title} ({len(reports)} cells, {checked} checks{extra})"
        with capsys.disabled():
            print("\n" + line)
        return bad

    return emit


def _run(names, law, radius, *, keep=lambda g, x: True, **options):
    reports = []
    for name in names:
        g = graph(name)
        for x in all_subsets(g):
            if keep(g, x):
                reports.append(ball_check(g, x, radius, law, graph_name=name.upper(), **options))
    return reports


def _failures(bad):
    return [(r.graph, r.subset, r.failures[:3]) for r in bad]


def test_criterion_01_commensurator_ball_law(announce):
    t = time.perf_counter()
    reports = _run(CORPUS, "commensurator", 8)
    elapsed = time.perf_counter() - t
    bad = announce(1, "commensurator = W_(Yinf u Xinf) on G1-G8, all subsets, radius 8", reports, f", {elapsed:.1f}s")
    assert not bad, _failures(bad)
    assert elapsed < 300


def test_criterion_02_normalizer_ball_law(announce):
    reports = _run(CORPUS + ("b3",), "normalizer", 8)
    bad = announce(2, "normalizer membership and v.u decomposition, radius 8", reports)
    assert not bad, _failures(bad)


def test_criterion_03_quasi_centralizer_ball_law(announce):
    def all_infinite(g, x):
        return not decompose_subset(g, x)[0]

    reports = _run(CORPUS, "quasiCentralizer", 8, keep=all_infinite)
    bad = announce(3, "{w : w x w^-1 = x} = W_perp(x) for x = xinf, radius 8", reports)
    assert not bad, _failures(bad)


def test_criterion_04_intersection_oracle(announce):
    t = time.perf_counter()
    reports = _run(FINITE, "intersection", None, xprime="*")
    elapsed = time.perf_counter() - t
    orders = {r.graph: r.order for r in reports}
    bad = announce(4, "W_x cap w W_x' w^-1 vs brute force on A2, A3, B3, I2(5)", reports, f", {elapsed:.1f}s")
    assert orders == {"G1": 6, "G5": 24, "B3": 48, "I2_5": 10}
    assert not bad, _failures(bad)
    assert elapsed < 120


def test_criterion_05_double_coset_minimum_unique(announce):
    reports = _run(FINITE, "lemma31Uniqueness", None, xprime="*")
    bad = announce(5, "unique minimal double coset element, additive lengths", reports)
    assert not bad, _failures(bad)


def test_criterion_06_dual_length(announce):
    reports = _run(SUPPORTED, "dualLength", 8, keep=lambda g, x: not x)
    bad = announce(6, "braid-class length = root-sign length, radius 8", reports)
    assert not bad, _failures(bad)


def test_criterion_07_longest_elements(announce):
    reports = _run(EVERYTHING, "longestElement", None, keep=is_finite_type, order_cap=10**5)
    bad = announce(7, "w0^2 = 1, w0 x w0 = x, l(w w0) = l(w0) - l(w) on every finite subset", reports)
    assert any(r.graph == "E6" and r.order == 51840 for r in reports)
    assert not bad, _failures(bad)


def test_criterion_08_witness_replay(announce):
    reports = _run(CORPUS + ("b3", "h3"), "witness", 8)
    bad = announce(8, "witness chains replay; x = xinf steps are commuting generators", reports)
    assert not bad, _failures(bad)


# independent of the classification table
ORDERS = {
    "a1": ("A_1", 2),
    "g1": ("A_2", 6),
    "g5": ("A_3", 24),
    "b2": ("B_2", 8),
    "b3": ("B_3", 48),
    "h3": ("H3", 120),
    "i2_3": ("A_2", 6),
    "i2_4": ("B_2", 8),
    "i2_5": ("I2(5)", 10),
    "i2_6": ("I2(6)", 12),
    "i2_7": ("I2(7)", 14),
    "i2_8": ("I2(8)", 16),
}


def test_criterion_09_classification_orders(announce):
    t = time.perf_counter()
    reports = [ball_check(graph(n), graph(n).full, None, "classification", graph_name=n.upper()) for n in ORDERS]
    elapsed = time.perf_counter() - t
    bad = announce(9, "enumerated order = table order for A1-A3, B2, B3, H3, I2(3..8)", reports, f", {elapsed:.1f}s")
    assert not bad, _failures(bad)
    assert {n.upper(): (r.details["type"], r.order) for n, r in zip(ORDERS, reports)} == {
        n.upper(): v for n, v in ORDERS.items()
    }
    assert elapsed < 60


def test_criterion_10_negative_controls(announce):
    path = default_config_path()
    graphs, cells = parse_config(path.read_text(), base=path.parent)
    controls = [c for c in cells if c.options.get("expect") == "fail"]
    reports = run_cells(graphs, controls)
    bad = announce(10, "every law's corrupted fixture reports a counterexample", reports)
    assert {c.law for c in controls} == set(LAWS)
    assert all(r.failure_count >= 1 for r in reports)
    assert not bad
