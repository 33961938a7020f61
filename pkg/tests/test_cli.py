import io
import json
import subprocess
import sys

import jsonschema
import pytest

from coxcomm.cli import main
from coxcomm.graph import load_graph
from coxcomm.words import parse_word

from conftest import DATA

SCHEMA = json.loads((DATA / "envelope.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    env = json.loads(text)
    jsonschema.validate(env, SCHEMA)
    return code, env


def g(name):
    return DATA / f"{name}.cox"


@pytest.mark.parametrize(
    "argv,last_line",
    [
        (["analyze", g("g3"), "--subset", "a,b"], "commensurator = <a,b>; self-commensurating: yes"),
        (["analyze", g("g1"), "--subset", "a"], "commensurator = <a,b>; self-commensurating: no"),
        (["analyze", g("g4"), "--subset", "a,b"], "commensurator = <a,b,c>; self-commensurating: no"),
        (["reduce", g("g1"), "a b a b"], "b a (length 2)"),
        (["coset", g("g1"), "a b a", "--left", "a", "--right", "b"], "u=a, v=b a, u'=e"),
        (["intersect", g("g1"), "a b a", "--left", "a", "--right", "b"], "conjugator=e, core=<a>"),
        (["witness", g("g1"), "--from", "a", "--to", "b"], "w = a b"),
        (["member", g("g4"), "c a b", "--subset", "a,b", "--kind", "normalizer"], "normalizer: yes (v=c, u=a b)"),
        (["classify", g("e6")], "<a,b,c,d,e,f>: E6 (order 51840)"),
        (["ball", g("g2"), "--radius", "3"], "(7 elements)"),
    ],
)
def test_golden_text(argv, last_line):
    code, text = run(*argv)
    assert code == 0
    assert text.splitlines()[-1] == last_line


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.cox"
    bad.write_text("a b\na b 1\n")
    assert run("reduce", bad, "a")[0] == 2
    assert run("reduce", tmp_path / "missing.cox", "a")[0] == 2
    assert run("reduce", g("g1"), "a z")[0] == 3
    assert run("analyze", g("g1"), "--subset", "q")[0] == 3
    assert run("longest", g("g2"), "--subset", "a,b")[0] == 3
    assert run("ball", g("g2"), "--radius", "40", "--ball-cap", "10")[0] == 4


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("COXCOMM_BALL_CAP", "10")
    assert run("ball", g("g2"), "--radius", "40")[0] == 4
    assert run("ball", g("g2"), "--radius", "40", "--ball-cap", "1000")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", g("g8"), "--subset", "a,b,c"],
        ["classify", g("g8")],
        ["reduce", g("g6"), "a b c a b c"],
        ["prod", g("g1"), "a b", "b a"],
        ["inv", g("b3"), "a b c"],
        ["coset", g("b3"), "a b c b a", "--left", "a", "--right", "c"],
        ["intersect", g("g5"), "a b c", "--left", "a,b", "--right", "b,c"],
        ["witness", g("g5"), "--from", "a", "--to", "c"],
        ["witness", g("g3"), "--from", "a,b", "--to", "b,c"],
        ["witness", g("g6"), "--from", "a", "--element", "b c"],
        ["ball", g("g2"), "--radius", "2"],
        ["member", g("g4"), "c", "--subset", "a,b", "--kind", "quasi-centralizer"],
        ["quasi", g("g4"), "--subset", "a,b"],
        ["longest", g("h3"), "--subset", "a,b,c"],
        ["roots", g("b3"), "--depth", "2"],
    ],
)
def test_json_envelopes_validate(argv):
    code, env = run_json(*argv)
    assert code == 0
    assert env["schemaVersion"] == 1
    assert env["command"] == argv[0]


def test_json_words_are_normal_forms():
    graph = load_graph(g("g6"))
    _, env = run_json("reduce", g("g6"), "a b a c b c a")
    w = env["result"]["word"]
    # feeding the result back reduces to itself
    _, again = run_json("reduce", g("g6"), w)
    assert again["result"] == env["result"]
    assert parse_word(graph, w).length == env["result"]["length"]


def test_json_and_text_agree():
    _, text = run("analyze", g("g8"), "--subset", "a,b,c")
    _, env = run_json("analyze", g("g8"), "--subset", "a,b,c")
    res = env["result"]
    assert f"commensurator = <{','.join(res['commensurator'])}>" in text
    assert f"Yinf = <{','.join(res['yinf'])}>" in text
    _, text = run("coset", g("b3"), "a b c b a", "--left", "a", "--right", "c")
    _, env = run_json("coset", g("b3"), "a b c b a", "--left", "a", "--right", "c")
    r = env["result"]
    assert text.strip() == f"u={r['u']['word']}, v={r['v']['word']}, u'={r['uPrime']['word']}"


def test_verify_small_config(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"graph G {g('g4')}\ncheck commensurator G a,b radius=3\n")
    code, text = run("verify", "--config", cfg)
    assert code == 0
    rep = json.loads(text)
    # infinite dihedral x <c>: 7 elements of length <= 3 without c, 5 with it
    assert rep["ok"] and rep["elements_checked"] == 7 + 5
    jsonschema.validate(rep, SCHEMA["$defs"]["report"])


def test_verify_reports_failure(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(
        f"graph G {g('g4')}\ngraph bad {g('g4')} relabel a c 3\n"
        "check quasiCentralizer G a,b radius=4 oracle=bad\n"
    )
    code, text = run("verify", "--config", cfg, "--summary")
    assert code == 1
    assert text.startswith("FAIL(")


def test_verify_config_errors(tmp_path):
    assert run("verify", "--config", tmp_path / "none.cfg")[0] == 2
    cfg = tmp_path / "c.cfg"
    cfg.write_text("check commensurator G * radius=3\n")
    assert run("verify", "--config", cfg)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coxcomm", "reduce", str(g("g1")), "b a b a"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "a b (length 2)"
