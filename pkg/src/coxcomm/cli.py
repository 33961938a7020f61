"""Command-line interface.

Exit codes: 0 ok, 1 check failure, 2 parse error, 3 semantic error,
4 budget exceeded. Budgets come from flags, else from COXCOMM_BALL_CAP,
COXCOMM_BFS_CAP, COXCOMM_ORDER_CAP and COXCOMM_RADIUS.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import BudgetExceeded, CoxeterError, GraphParseError
from .graph import (
    CoxeterGraph,
    GeneratorSubset,
    analyze_parabolic,
    components_with_types,
    format_label,
    load_graph,
)
from .parabolic import (
    DEFAULT_BFS_CAP,
    commensurator_membership,
    conjugation_witness,
    factor_witness,
    intersect_parabolic_conjugate,
    normalizer_decompose,
    quasi_center,
    quasi_centralizer,
    quasi_centralizer_membership,
)
from .roots import positive_roots_up_to_depth
from .verify import DEFAULT_ORDER_CAP, DEFAULT_RADIUS, ConfigError, default_config_path, run_suite
from .words import (
    DEFAULT_BALL_CAP,
    Element,
    ball,
    double_coset_decompose,
    format_word,
    inverse,
    longest_element,
    parse_word,
    product,
)

SCHEMA_VERSION = 1


class Budgets:
    def __init__(self, args):
        self.ball_cap = _budget(args.ball_cap, "COXCOMM_BALL_CAP", DEFAULT_BALL_CAP)
        self.bfs_cap = _budget(args.bfs_cap, "COXCOMM_BFS_CAP", DEFAULT_BFS_CAP)
        self.order_cap = _budget(args.order_cap, "COXCOMM_ORDER_CAP", DEFAULT_ORDER_CAP)
        self.radius = _budget(getattr(args, "radius", None), "COXCOMM_RADIUS", DEFAULT_RADIUS)


def _budget(flag, env: str, default: int) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise GraphParseError(f"{env} must be an integer, got {raw!r}") from None


def _word_json(g: CoxeterGraph, w: Element) -> dict:
    return {"word": format_word(g, w), "length": w.length}


def _subset_text(g: CoxeterGraph, x: GeneratorSubset) -> str:
    return f"<{g.format_subset(x)}>"


def _graph_json(g: CoxeterGraph, path: str) -> dict:
    edges = [
        [g.generators[i], g.generators[j], format_label(g.m(i, j))]
        for i in range(g.rank)
        for j in range(i + 1, g.rank)
        if g.m(i, j) != 2
    ]
    return {"file": path, "generators": list(g.generators), "edges": edges}


# Each handler returns (inputs, result, text lines, exit code).


def cmd_analyze(g, args, budgets):
    x = g.parse_subset(args.subset)
    a = analyze_parabolic(g, x)
    comps = [
        {"subset": g.names(c), "type": t.kind, "order": t.order if t.is_finite else "inf"} for c, t in a.components
    ]
    result = {
        "components": comps,
        "x0": g.names(a.x0),
        "xinf": g.names(a.xinf),
        "yinf": g.names(a.yinf),
        "commensurator": g.names(a.commensurator),
        "selfCommensurating": a.self_commensurating,
    }
    lines = [f"X = {_subset_text(g, x)}"]
    for c in comps:
        order = f" (order {c['order']})" if c["order"] != "inf" else ""
        lines.append(f"component <{','.join(c['subset'])}>: {c['type']}{order}")
    lines += [
        f"X0 = {_subset_text(g, a.x0)}",
        f"Xinf = {_subset_text(g, a.xinf)}",
        f"Yinf = {_subset_text(g, a.yinf)}",
        f"commensurator = {_subset_text(g, a.commensurator)}; "
        f"self-commensurating: {'yes' if a.self_commensurating else 'no'}",
    ]
    return {"subset": g.names(x)}, result, lines, 0


def cmd_classify(g, args, budgets):
    x = g.parse_subset(args.subset) if args.subset is not None else g.full
    comps = []
    lines = []
    for c, t in components_with_types(g, x):
        order = t.order if t.is_finite else "inf"
        comps.append({"subset": g.names(c), "type": t.kind, "rank": t.rank, "order": order})
        lines.append(f"{_subset_text(g, c)}: {t.kind} (order {format_label(t.order)})")
    return {"subset": g.names(x)}, {"components": comps}, lines, 0


def cmd_reduce(g, args, budgets):
    w = parse_word(g, args.word)
    return {"word": args.word}, _word_json(g, w), [f"{format_word(g, w)} (length {w.length})"], 0


def cmd_prod(g, args, budgets):
    w = product(g, *(parse_word(g, t) for t in args.words))
    return {"words": args.words}, _word_json(g, w), [f"{format_word(g, w)} (length {w.length})"], 0


def cmd_inv(g, args, budgets):
    w = inverse(g, parse_word(g, args.word))
    return {"word": args.word}, _word_json(g, w), [f"{format_word(g, w)} (length {w.length})"], 0


def cmd_coset(g, args, budgets):
    w = parse_word(g, args.word)
    x, xp = g.parse_subset(args.left), g.parse_subset(args.right)
    d = double_coset_decompose(g, w, x, xp)
    result = {"u": _word_json(g, d.u), "v": _word_json(g, d.v), "uPrime": _word_json(g, d.u_prime)}
    line = f"u={format_word(g, d.u)}, v={format_word(g, d.v)}, u'={format_word(g, d.u_prime)}"
    return {"word": args.word, "left": g.names(x), "right": g.names(xp)}, result, [line], 0


def cmd_intersect(g, args, budgets):
    w = parse_word(g, args.word)
    x, xp = g.parse_subset(args.left), g.parse_subset(args.right)
    d = intersect_parabolic_conjugate(g, x, xp, w)
    result = {"conjugator": _word_json(g, d.conjugator), "core": g.names(d.core)}
    line = f"conjugator={format_word(g, d.conjugator)}, core={_subset_text(g, d.core)}"
    return {"word": args.word, "left": g.names(x), "right": g.names(xp)}, result, [line], 0


def _witness_result(g, wit):
    if wit is None:
        return None, ["no witness"]
    steps = [
        {"t": g.generators[st.t], "x": g.names(st.x), "c": _word_json(g, st.c), "xNext": g.names(st.x_next)}
        for st in wit.steps
    ]
    lines = [
        f"step {i}: t={s['t']} c={s['c']['word']} : <{','.join(s['x'])}> -> <{','.join(s['xNext'])}>"
        for i, s in enumerate(steps)
    ]
    lines.append(f"w = {format_word(g, wit.w)}")
    return {"steps": steps, "w": _word_json(g, wit.w)}, lines


def cmd_witness(g, args, budgets):
    x = g.parse_subset(args.source)
    inputs = {"from": g.names(x)}
    if args.element is not None:
        inputs["element"] = args.element
        wit = factor_witness(g, x, parse_word(g, args.element), budget=budgets.bfs_cap)
    elif args.target is not None:
        xp = g.parse_subset(args.target)
        inputs["to"] = g.names(xp)
        wit = conjugation_witness(g, x, xp, cap=budgets.bfs_cap)
    else:
        raise CoxeterError("witness needs --to or --element")
    result, lines = _witness_result(g, wit)
    return inputs, result, lines, 0


def cmd_ball(g, args, budgets):
    x = g.parse_subset(args.subset) if args.subset is not None else None
    elems = list(ball(g, budgets.radius, cap=budgets.ball_cap, subset=x))
    result = {"count": len(elems), "elements": [format_word(g, w) for w in elems]}
    inputs = {"radius": budgets.radius, "subset": g.names(x) if x is not None else None}
    return inputs, result, [format_word(g, w) for w in elems] + [f"({len(elems)} elements)"], 0


def cmd_member(g, args, budgets):
    x = g.parse_subset(args.subset)
    w = parse_word(g, args.word)
    result: dict = {"kind": args.kind}
    if args.kind == "commensurator":
        result["member"] = commensurator_membership(g, x, w)
    elif args.kind == "normalizer":
        dec = normalizer_decompose(g, x, w)
        result["member"] = dec is not None
        if dec is not None:
            result["v"], result["u"] = _word_json(g, dec[0]), _word_json(g, dec[1])
    else:
        result["member"] = quasi_centralizer_membership(g, x, w)
    line = f"{args.kind}: {'yes' if result['member'] else 'no'}"
    if "v" in result:
        line += f" (v={result['v']['word']}, u={result['u']['word']})"
    return {"subset": g.names(x), "word": args.word}, result, [line], 0


def cmd_quasi(g, args, budgets):
    x = g.parse_subset(args.subset)
    gens = quasi_center(g, x)
    result = {"quasiCenter": [format_word(g, w) for w in gens], "quasiCentralizer": None}
    lines = ["quasi-center generators: " + (", ".join(format_word(g, w) for w in gens) or "none")]
    try:
        y = quasi_centralizer(g, x)
    except CoxeterError as exc:
        lines.append(f"quasi-centralizer: no closed form ({exc})")
    else:
        result["quasiCentralizer"] = g.names(y)
        lines.append(f"quasi-centralizer = W_{_subset_text(g, y)}")
    return {"subset": g.names(x)}, result, lines, 0


def cmd_longest(g, args, budgets):
    x = g.parse_subset(args.subset)
    w = longest_element(g, x)
    return {"subset": g.names(x)}, _word_json(g, w), [f"{format_word(g, w)} (length {w.length})"], 0


def cmd_roots(g, args, budgets):
    pairs = positive_roots_up_to_depth(g, args.depth, cap=budgets.ball_cap)
    result = [{"root": [str(c) for c in r.coords], "reflection": format_word(g, w)} for r, w in pairs]
    lines = [f"{r.format(g)}  ->  {format_word(g, w)}" for r, w in pairs]
    return {"depth": args.depth}, {"count": len(pairs), "roots": result}, lines, 0


COMMANDS = {
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "reduce": cmd_reduce,
    "prod": cmd_prod,
    "inv": cmd_inv,
    "coset": cmd_coset,
    "intersect": cmd_intersect,
    "witness": cmd_witness,
    "ball": cmd_ball,
    "member": cmd_member,
    "quasi": cmd_quasi,
    "longest": cmd_longest,
    "roots": cmd_roots,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    common.add_argument("--ball-cap", type=int, help="maximum elements enumerated in a ball")
    common.add_argument("--bfs-cap", type=int, help="maximum nodes in witness searches")
    common.add_argument("--order-cap", type=int, help="maximum order of a fully enumerated group")

    parser = argparse.ArgumentParser(prog="coxcomm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("graph", help="graph file")
        return p

    p = graph_cmd("analyze", "X^0, X^inf, Y^inf and the commensurator of W_X")
    p.add_argument("--subset", required=True)
    p = graph_cmd("classify", "components of X with their types")
    p.add_argument("--subset")
    p = graph_cmd("reduce", "ShortLex normal form of a word")
    p.add_argument("word")
    p = graph_cmd("prod", "product of words")
    p.add_argument("words", nargs="+")
    p = graph_cmd("inv", "inverse of a word")
    p.add_argument("word")
    p = graph_cmd("coset", "w = u v u' with v minimal in W_X w W_X'")
    p.add_argument("word")
    p.add_argument("--left", default="")
    p.add_argument("--right", default="")
    p = graph_cmd("intersect", "W_X cap w W_X' w^-1 as conjugator . W_Y . conjugator^-1")
    p.add_argument("word")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p = graph_cmd("witness", "chain of elementary conjugations")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target")
    p.add_argument("--element")
    p = graph_cmd("ball", "elements of length <= radius")
    p.add_argument("--radius", type=int)
    p.add_argument("--subset")
    p = graph_cmd("member", "membership in the commensurator, normalizer or quasi-centralizer of W_X")
    p.add_argument("word")
    p.add_argument("--subset", required=True)
    p.add_argument("--kind", choices=["commensurator", "normalizer", "quasi-centralizer"], default="commensurator")
    p = graph_cmd("quasi", "quasi-center of (W_X, X) and quasi-centralizer of W_X")
    p.add_argument("--subset", required=True)
    p = graph_cmd("longest", "longest element of a finite W_X")
    p.add_argument("--subset", required=True)
    p = graph_cmd("roots", "positive roots up to a depth, with reflections")
    p.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--config", help="suite config (default: the shipped corpus)")
    p.add_argument("--radius", type=int, help="upper bound applied to every cell's radius")
    p.add_argument("--summary", action="store_true", help="one human-readable line per report")
    return parser


def _envelope(command, graph, inputs, result) -> dict:
    return {"schemaVersion": SCHEMA_VERSION, "command": command, "graph": graph, "inputs": inputs, "result": result}


def _verify(args, out) -> int:
    budgets = Budgets(args)
    config = Path(args.config) if args.config else default_config_path()
    try:
        reports = run_suite(
            config,
            cap=budgets.ball_cap,
            order_cap=budgets.order_cap,
            radius_override=args.radius if args.radius is not None else _env_radius(),
        )
    except OSError as exc:
        raise ConfigError(f"cannot read {config}: {exc}") from None
    for rep in reports:
        print(rep.summary() if args.summary else rep.to_json(), file=out)
    return 0 if all(rep.ok for rep in reports) else 1


def _env_radius():
    raw = os.environ.get("COXCOMM_RADIUS")
    return int(raw) if raw is not None else None


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args, out)
        try:
            g = load_graph(args.graph)
        except OSError as exc:
            raise GraphParseError(f"cannot read {args.graph}: {exc}") from None
        budgets = Budgets(args)
        inputs, result, lines, code = COMMANDS[args.command](g, args, budgets)
        if args.json:
            env = _envelope(args.command, _graph_json(g, args.graph), inputs, result)
            print(json.dumps(env, sort_keys=True), file=out)
        else:
            for line in lines:
                print(line, file=out)
        return code
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return exc.exit_code
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return exc.exit_code
    except CoxeterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
