"""Command-line front end.

Every command prints either a text summary or one JSON document with the keys
``command``, ``config``, ``claims``, ``certificates`` and ``verdict`` (plus
``schema``, the report format version).  Exit
status: 0 when every claim holds, 1 on usage or input errors, 2 when a claim
fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import dynamics, funcalc, ktheory, paradox, regset, sexpr, suites
from .freegroup import format_word
from .suites import Check

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pvk", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    k = sub.add_parser("kgroup", help="K-group computation for one of the two examples")
    k.add_argument("--example", type=int, choices=(1, 2), required=True)
    k.add_argument("--which", choices=("k0", "k1"), required=True)
    k.add_argument("--depth", type=_positive, required=True)
    k.add_argument("--patterns", type=_positive, default=None)

    r = sub.add_parser("reduce", help="reduce an expression to its canonical K_0 class")
    r.add_argument("--example", type=int, choices=(1, 2), required=True)
    r.add_argument("--expr", required=True)

    v = sub.add_parser("verify", help="run the check suite of one result")
    v.add_argument("--lemma", choices=sorted(suites.SUITES), required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=_positive, default=None)

    x = sub.add_parser("paradox", help="paradoxical decomposition of a set")
    x.add_argument("--set", dest="set_expr", required=True)

    a = sub.add_parser("amen", help="amenability bounds")
    a.add_argument("--imax", type=_positive, required=True)
    return p


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _kgroup(args) -> tuple[list[Check], list[dict]]:
    if args.example == 1 and args.which == "k1":
        rep = ktheory.k1_example1(args.depth)
    elif args.example == 1:
        rep = ktheory.k0_report_example1(args.depth)
    elif args.which == "k0":
        rep = ktheory.k0_report_example2(args.depth, args.patterns or 2)
    else:
        rep = ktheory.k1_example2(args.depth, args.patterns or 2)
    claims = [Check(c["name"], c["ok"], c.get("detail")) for c in rep.claims]
    summary = rep.to_dict()
    certs = summary.pop("certificates")
    return claims, [summary] + certs


def _reduce(args) -> tuple[list[Check], list[dict]]:
    try:
        node = sexpr.parse(args.expr)
        if args.example == 1:
            f = sexpr.eval_function(node)
            cert = ktheory.k0_reduce_example1(f, sexpr.unparse(node))
        else:
            cert = ktheory.k0_reduce_example2(sexpr.to_genexpr(node), sexpr.unparse(node))
    except funcalc.NotCylinderFinitary as exc:
        raise UsageError(f"expression is outside the cylinder span: {exc}") from None
    except sexpr.OutOfSpan as exc:
        raise UsageError(f"expression is outside the generator span: {exc}") from None
    except sexpr.SExprError as exc:
        raise UsageError(f"bad expression: {exc}") from None
    claims = [Check("witness replays: sigma(witness) = input - canonical mod I", cert.verify(), list(cert.canonical))]
    return claims, [cert.to_dict()]


def _verify(args) -> tuple[list[Check], list[dict]]:
    return suites.run(args.lemma, seed=args.seed, cases=args.cases), []


def _paradox(args) -> tuple[list[Check], list[dict]]:
    try:
        node = sexpr.parse(args.set_expr)
        E = sexpr.eval_set(node)
    except sexpr.SExprError as exc:
        raise UsageError(f"bad set expression: {exc}") from None
    if E == regset.universe(E.rank):
        cert = paradox.standard_cert()
        claims = [Check("strong certificate verifies", bool(paradox.verify_cert(cert)))]
        iso = paradox.cert_to_isometries(cert)
        claims += [Check(n, ok) for n, ok in iso.checks().items()]
    elif isinstance(node, list) and node and node[0] == "cyl" and len(node) == 2:
        w = sexpr.word_literal(node[1], E.rank)
        if w.is_identity:
            raise UsageError("the empty cylinder word denotes G; use (all)")
        cert = paradox.cylinder_cert(w)
        claims = [Check("weak certificate verifies", bool(paradox.verify_cert(cert)))]
    else:
        raise UsageError("only (all) and single cylinders (cyl \"w\") have certificate constructors")
    return claims, [cert.to_dict()]


def _amen(args) -> tuple[list[Check], list[dict]]:
    rep = dynamics.amenability_suite(args.imax)
    claims = [Check(n, ok) for n, ok in rep.checks]
    extra = rep.extra
    doc = {
        "pairs": extra["pairs"],
        "worst_slack": str(extra["worst_slack"]),
        "worst_pair": [extra["worst_pair"][0], format_word(extra["worst_pair"][1])] if extra["worst_pair"] else [],
    }
    return claims, [doc]


COMMANDS = {"kgroup": _kgroup, "reduce": _reduce, "verify": _verify, "paradox": _paradox, "amen": _amen}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format")}


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Run a command and return ``(exit_status, output_text)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, f"pvk: error: {exc}\n"
    except SystemExit as exc:  # --help
        return (EXIT_OK if not exc.code else EXIT_USAGE), ""
    try:
        claims, certs = COMMANDS[args.command](args)
    except UsageError as exc:
        return EXIT_USAGE, f"pvk: error: {exc}\n"
    ok = all(c.ok for c in claims)
    doc = {
        "command": args.command,
        "config": _config(args),
        "claims": [c.to_dict() for c in claims],
        "certificates": certs,
        "verdict": "pass" if ok else "fail",
        "schema": ktheory.SCHEMA,
    }
    if args.format == "json":
        text = json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  [{_short(c.detail)}]" if c.detail not in (None, [], True) else "")
                 for c in claims]
        lines.append(f"verdict: {doc['verdict']}")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


def _short(v) -> str:
    s = json.dumps(_jsonable(v))
    return s if len(s) <= 80 else s[:77] + "..."


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    (sys.stderr if code == EXIT_USAGE else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
