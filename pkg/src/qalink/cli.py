"""Command-line front end.

Exit status: 0 on success, 1 when a computation refuses its input (failed
precondition, budget, rejected certificate), 2 on usage errors.  JSON is the
contract; ``--format table`` prints a derived view.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Optional

from qalink import diagram as dg
from qalink import families as fa
from qalink import montesinos as mo
from qalink import notation as nt
from qalink import polynomials as pl
from qalink import qa
from qalink import taitgraph as tg

EXIT_OK, EXIT_REFUSED, EXIT_USAGE = 0, 1, 2


class Refusal(Exception):
    def __init__(self, reason: str, detail: str = ""):
        super().__init__(detail or reason)
        self.reason = reason
        self.detail = detail


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _table(obj) -> str:
    if isinstance(obj, list):
        if not obj:
            return "(empty)"
        cols = sorted({k for row in obj for k in row if not isinstance(row[k], (dict, list))})
        lines = ["\t".join(cols)]
        lines += ["\t".join(str(row.get(c, "")) for c in cols) for row in obj]
        return "\n".join(lines)
    if isinstance(obj, dict):
        return "\n".join(f"{k}\t{v if not isinstance(v, (dict, list)) else dumps(v)}" for k, v in sorted(obj.items()))
    return str(obj)


def _emit(args, obj) -> None:
    print(dumps(obj) if args.format == "json" else _table(obj))


def _is_link(text: str) -> bool:
    t = text.strip()
    return t[:2] in ("n(", "d(") and t.endswith(")")


def _diagram(text: str) -> dg.Diagram:
    """A link or tangle expression, or a path to a diagram JSON file."""
    if text.endswith(".json"):
        with open(text) as fh:
            return dg.from_json(fh.read())
    return dg.compile_link(text) if _is_link(text) else dg.compile_tangle(nt.parse_tangle(text))


def _link(text: str) -> dg.Diagram:
    D = _diagram(text)
    if D.is_tangle:
        raise Refusal("not_a_link", "expected a link expression n(...) or d(...)")
    return D


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


# -- subcommands --------------------------------------------------------------------------

def cmd_tangle_eval(args):
    f = nt.tangle_fraction(nt.parse_tangle(args.expr))
    if args.format == "json":
        print(dumps({"fraction": nt.format_fraction(f)}))
    else:
        print(nt.format_fraction(f))


def cmd_diagram_build(args):
    D = _diagram(args.expr)
    if args.format == "json":
        print(dg.to_json(D))
    else:
        print(_table(dg.classify(D).as_dict()))


def cmd_det(args):
    D = _diagram(args.expr)
    method = "enumerate" if args.method == "enumerate" else "matrix"
    d = tg.determinant(D, method=method, budget=args.tree_budget)
    print(dumps({"det": d}) if args.format == "json" else d)


def cmd_poly(args):
    D = _diagram(args.expr)
    budget = args.skein_budget
    if args.kind == "bracket":
        text, var = pl.kauffman_bracket(D, budget=budget).to_string("A"), "A"
    elif args.kind == "jones":
        text, var = pl.jones(D, budget=budget).to_string("s"), "s = t^(1/2)"
    else:
        text, var = pl.kauffman_lambda(D, budget=budget).to_string(), "a, z"
    print(dumps({"kind": args.kind, "poly": text, "variable": var}) if args.format == "json" else text)


def cmd_classify(args):
    _emit(args, dg.classify(_diagram(args.expr)).as_dict())


def _verdict_dict(v, with_cert: bool = True) -> dict:
    out = {"verdict": v.verdict}
    if isinstance(v, qa.Certified):
        if with_cert:
            out["certificate"] = json.loads(qa.certificate_to_json(v.certificate))
        out["size"] = v.certificate.size()
    else:
        out["reason"] = v.reason
    return out


def cmd_qa_certify(args):
    D = _link(args.expr)
    hints = {}
    if args.montesinos:
        hints["montesinos"] = args.montesinos
    try:
        v = qa.certify(D, args.depth, hints=hints or None, expr=None if args.expr.endswith(".json") else args.expr)
    except qa.QAError as exc:
        raise Refusal("precondition", str(exc)) from exc
    out = _verdict_dict(v, with_cert=args.format == "json")
    _emit(args, out)


def cmd_qa_verify(args):
    try:
        res = qa.verify_certificate(_read(args.certificate))
    except (ValueError, KeyError) as exc:
        raise Refusal("malformed_certificate", str(exc)) from exc
    _emit(args, {"accepted": res.accepted, "reasons": list(res.reasons)})
    return EXIT_OK if res.accepted else EXIT_REFUSED


def cmd_montesinos_classify(args):
    v = mo.classify_qa(args.params)
    _emit(args, v.as_dict())


def cmd_montesinos_build(args):
    pair = tuple(int(x) for x in args.pair.split(",")) if args.pair else None
    try:
        D, log = mo.build_by_extensions(args.params, pair)
    except qa.QAError as exc:
        raise Refusal("not_buildable", str(exc)) from exc
    out = {"log": [s.as_dict() for s in log], "det": tg.determinant(D), "crossing_number": D.crossing_number}
    if args.certificate:
        out["certificate"] = json.loads(qa.certificate_to_json(mo.build_certificate(log, args.depth)))
    if args.format == "json":
        print(dumps(out))
    else:
        print(_table(out["log"]))


def _spec_from_args(args) -> fa.FamilySpec:
    params = tuple(Fraction(p) for p in args.params.split(",")) if args.params else ()
    star = tuple(int(a) for a in args.star.split(",")) if args.star else ()
    return fa.FamilySpec(args.variant, args.T, params, star, args.S)


def cmd_family_generate(args):
    g = fa.generate(_spec_from_args(args), depth_budget=args.depth)
    if args.format == "json":
        print(dumps(g.as_dict(with_certificate=True)))
    else:
        print(_table({k: v for k, v in g.as_dict().items() if k != "diagram"}))


def _manifest(path: str):
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise Refusal("malformed_manifest", str(exc)) from exc
    return data if isinstance(data, list) else data.get("instances", [])


def cmd_family_sweep(args):
    rows = fa.sweep(_manifest(args.manifest), jobs=args.jobs)
    if args.format == "json":
        print(dumps(rows))
        return
    flat = []
    for r in rows:
        link = r.get("link", {})
        flat.append({"key": r["key"], "status": r["status"], "expr": link.get("expr", ""),
                     "det": link.get("det", ""), "crossings": link.get("crossing_number", ""),
                     "verdict": link.get("verdict", r.get("reason", ""))})
    print(_table(flat))


def cmd_family_corpus(args):
    _emit(args, [{"expr": e} for e in fa.almost_alternating_corpus(args.count, args.seed)])


def _conjecture_row(item: dict, args) -> dict:
    if "expr" in item:
        key, expr = item["expr"], item["expr"]
        D = dg.compile_link(expr)
        v = qa.certify(D, args.depth, expr=expr)
        cert = v.certificate if isinstance(v, qa.Certified) else None
        verdict = v.verdict
    else:
        spec = fa.FamilySpec.from_dict(item)
        key = spec.key()
        try:
            g = fa.generate(spec, depth_budget=args.depth)
        except fa.FamilyError as exc:
            return {"key": key, "verdict": "refused", "reason": exc.reason}
        expr, D, cert, verdict = g.expr, g.diagram, g.certificate, g.verdict
    row = qa.conjecture_check(D, cert, args.skein_budget, expr=expr)
    row.update(key=key, expr=expr, verdict=verdict)
    return row


def cmd_conjecture_report(args):
    rows = sorted((_conjecture_row(it, args) for it in _manifest(args.manifest)), key=lambda r: r["key"])
    _emit(args, rows)
    bad = [r for r in rows if r.get("verdict") == "Certified" and r.get("c_le_det") is False]
    return EXIT_REFUSED if bad else EXIT_OK


def cmd_conjecture_ratio(args):
    res = fa.ratio_experiment(args.count, args.seed, depth_budget=args.depth)
    if args.format == "json":
        print(dumps(res))
    else:
        print(_table(res["rows"]))
    return EXIT_REFUSED if res["contradictions"] else EXIT_OK


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--skein-budget", type=int, default=pl.DEFAULT_SKEIN_BUDGET)
    common.add_argument("--tree-budget", type=int, default=tg.DEFAULT_TREE_BUDGET)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="qalink", description="Quasi-alternating link toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(group, name, func, help_):
        sp = group.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    tangle = sub.add_parser("tangle", help="tangle expressions").add_subparsers(dest="action", required=True)
    add(tangle, "eval", cmd_tangle_eval, "Conway fraction of a tangle").add_argument("expr")

    diagram = sub.add_parser("diagram", help="diagrams").add_subparsers(dest="action", required=True)
    add(diagram, "build", cmd_diagram_build, "compile an expression to a diagram").add_argument("expr")

    sp = sub.add_parser("det", parents=[common], help="link determinant")
    sp.add_argument("expr")
    sp.add_argument("--method", choices=("matrix", "enumerate"), default="matrix")
    sp.set_defaults(func=cmd_det)

    sp = sub.add_parser("poly", parents=[common], help="polynomial invariants")
    sp.add_argument("expr")
    sp.add_argument("--kind", choices=("bracket", "jones", "lambda"), default="jones")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("classify", parents=[common], help="structural flags")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_classify)

    qag = sub.add_parser("qa", help="quasi-alternating certificates").add_subparsers(dest="action", required=True)
    sp = add(qag, "certify", cmd_qa_certify, "search for a certificate")
    sp.add_argument("expr")
    sp.add_argument("--montesinos", default=None, help="Montesinos parameters e;a/b,... of the link")
    add(qag, "verify", cmd_qa_verify, "check a certificate (file or -)").add_argument("certificate")

    mg = sub.add_parser("montesinos", help="Montesinos links").add_subparsers(dest="action", required=True)
    add(mg, "classify", cmd_montesinos_classify, "quasi-alternating classification").add_argument("params")
    sp = add(mg, "build", cmd_montesinos_build, "construct by dealternator and rational extensions")
    sp.add_argument("params")
    sp.add_argument("--pair", default=None, help="witness pair i,j (0-based)")
    sp.add_argument("--certificate", action="store_true", help="attach a certificate")

    fg = sub.add_parser("family", help="link families").add_subparsers(dest="action", required=True)
    sp = add(fg, "generate", cmd_family_generate, "generate one family member")
    sp.add_argument("--variant", choices=fa.VARIANTS, default="sum")
    sp.add_argument("--T", required=True, help="base tangle expression")
    sp.add_argument("--params", default="", help="comma-separated fractions in (0, 1)")
    sp.add_argument("--star", default="", help="continued fraction 0,a1,...,ak of the star variant")
    sp.add_argument("--S", default=None, help="second tangle of the counterexample variant")
    add(fg, "sweep", cmd_family_sweep, "run a sweep manifest").add_argument("manifest")
    add(fg, "corpus", cmd_family_corpus, "random almost alternating expressions").add_argument(
        "--count", type=int, default=20)

    cg = sub.add_parser("conjecture", help="conjecture checks").add_subparsers(dest="action", required=True)
    add(cg, "report", cmd_conjecture_report, "crossing number, determinant and Jones signs").add_argument("manifest")
    add(cg, "ratio", cmd_conjecture_ratio, "determinant-ratio test against certification").add_argument(
        "--count", type=int, default=20)
    return p


# values such as "-1;2,3,3" or "-1/2" are arguments, not options
_NEGATIVE = re.compile(r"^-[0-9(\[]")


def _allow_negative(parser: argparse.ArgumentParser) -> None:
    parser._negative_number_matcher = _NEGATIVE
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                _allow_negative(sp)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    _allow_negative(parser)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    random.seed(args.seed)
    try:
        status = args.func(args)
    except nt.NotationError as exc:
        print(dumps({"error": "usage", "detail": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(dumps({"error": "usage", "detail": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except Refusal as exc:
        print(dumps({"error": exc.reason, "detail": exc.detail}))
        return EXIT_REFUSED
    except fa.FamilyError as exc:
        print(dumps({"error": exc.reason, "detail": exc.detail}))
        return EXIT_REFUSED
    except (tg.BudgetExceeded, dg.DiagramError, nt.NonRationalError, qa.QAError, ValueError) as exc:
        print(dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_REFUSED
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
