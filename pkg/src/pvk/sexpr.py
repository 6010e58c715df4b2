"""S-expression front end for sets and step functions.

Sets::

    (cyl "ab") (pat "b" "ab" "a") (fin "a" "ab") (uni X ...) (int X ...)
    (dif X Y) (cmp X) (tr "w" X) (all) (none)

Functions::

    (ind X) (add f g ...) (sub f g) (scl 3 f) (mul f g ...) (trf "w" f) (one) (zero)

Scalars may be integers or fractions such as ``3/2``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import funcalc, regset
from .freegroup import DEFAULT_RANK, parse_word
from .funcalc import StepFunction
from .regset import Pattern, RegSet
from .runwords import GenExpr, RunWord, is_generator_pattern


class SExprError(ValueError):
    """Malformed expression."""


class OutOfSpan(ValueError):
    """Well-formed, but outside the generator span being asked for."""


class Str(str):
    """A quoted string literal (as opposed to an operator symbol)."""


_TOKEN = re.compile(r'\s*(?:(\()|(\))|"([^"]*)"|([^\s()"]+))')


def tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SExprError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        lp, rp, q, atom = m.groups()
        if lp:
            out.append("(")
        elif rp:
            out.append(")")
        elif q is not None:
            out.append(Str(q))
        else:
            out.append(_atom(atom))
    return out


def _atom(tok: str):
    if re.fullmatch(r"-?\d+(/\d+)?", tok):
        return Fraction(tok)
    return tok


def parse(text: str):
    tokens = tokenize(text)
    if not tokens:
        raise SExprError("empty expression")
    node, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise SExprError("trailing input after expression")
    return node


def _parse(tokens: list, pos: int):
    tok = tokens[pos]
    if tok == ")" and not isinstance(tok, Str):
        raise SExprError("unbalanced ')'")
    if tok != "(" or isinstance(tok, Str):
        return tok, pos + 1
    items = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise SExprError("missing ')'")
        if tokens[pos] == ")" and not isinstance(tokens[pos], Str):
            return items, pos + 1
        node, pos = _parse(tokens, pos)
        items.append(node)


def unparse(node) -> str:
    if isinstance(node, list):
        return "(" + " ".join(unparse(x) for x in node) + ")"
    if isinstance(node, Str):
        return f'"{node}"'
    return str(node)


def _head(node) -> tuple[str, list]:
    if not isinstance(node, list) or not node or isinstance(node[0], (Str, Fraction, list)):
        raise SExprError(f"expected (operator ...), got {unparse(node)}")
    return node[0], node[1:]


def _arity(op: str, args: list, n: int | None = None, at_least: int | None = None) -> None:
    if n is not None and len(args) != n:
        raise SExprError(f"{op} takes {n} argument(s), got {len(args)}")
    if at_least is not None and len(args) < at_least:
        raise SExprError(f"{op} takes at least {at_least} argument(s)")


def _string(x) -> str:
    if not isinstance(x, Str):
        raise SExprError(f"expected a quoted string, got {unparse(x)}")
    return str(x)


def word_literal(x, rank: int = DEFAULT_RANK):
    try:
        return parse_word(_string(x), rank)
    except ValueError as exc:
        raise SExprError(str(exc)) from None


def _pattern(args: list, rank: int) -> Pattern:
    _arity("pat", args, 3)
    try:
        return Pattern.parse(_string(args[0]), _string(args[1]), _string(args[2]), rank)
    except ValueError as exc:
        raise SExprError(str(exc)) from None


_SET_OPS = {"cyl", "pat", "fin", "uni", "int", "dif", "cmp", "tr", "all", "none"}
_FUN_OPS = {"ind", "add", "sub", "scl", "mul", "trf", "one", "zero"}


def eval_set(node, rank: int = DEFAULT_RANK) -> RegSet:
    op, args = _head(node)
    if op == "cyl":
        _arity(op, args, 1)
        w = word_literal(args[0], rank)
        return regset.universe(rank) if w.is_identity else regset.cylinder(w)
    if op == "pat":
        return regset.pattern_set(_pattern(args, rank))
    if op == "fin":
        return regset.finite([word_literal(a, rank) for a in args], rank)
    if op == "uni":
        return regset.union(*(eval_set(a, rank) for a in args)) if args else regset.empty(rank)
    if op == "int":
        return regset.intersect(*(eval_set(a, rank) for a in args)) if args else regset.universe(rank)
    if op == "dif":
        _arity(op, args, 2)
        return eval_set(args[0], rank) - eval_set(args[1], rank)
    if op == "cmp":
        _arity(op, args, 1)
        return ~eval_set(args[0], rank)
    if op == "tr":
        _arity(op, args, 2)
        return regset.translate(word_literal(args[0], rank), eval_set(args[1], rank))
    if op == "all":
        _arity(op, args, 0)
        return regset.universe(rank)
    if op == "none":
        _arity(op, args, 0)
        return regset.empty(rank)
    raise SExprError(f"unknown set operator {op!r}")


def _scalar(x) -> Fraction:
    if not isinstance(x, Fraction):
        raise SExprError(f"expected a number, got {unparse(x)}")
    return x


def eval_function(node, rank: int = DEFAULT_RANK) -> StepFunction:
    op, args = _head(node)
    if op in _SET_OPS:
        raise SExprError(f"set expression where a function is expected; wrap it in (ind ...)")
    if op == "ind":
        _arity(op, args, 1)
        return funcalc.indicator(eval_set(args[0], rank))
    if op == "add":
        return funcalc.total((eval_function(a, rank) for a in args), rank)
    if op == "sub":
        _arity(op, args, 2)
        return eval_function(args[0], rank) - eval_function(args[1], rank)
    if op == "scl":
        _arity(op, args, 2)
        return _scalar(args[0]) * eval_function(args[1], rank)
    if op == "mul":
        _arity(op, args, at_least=1)
        out = eval_function(args[0], rank)
        for a in args[1:]:
            out = out * eval_function(a, rank)
        return out
    if op == "trf":
        _arity(op, args, 2)
        return funcalc.translate(word_literal(args[0], rank), eval_function(args[1], rank))
    if op == "one":
        _arity(op, args, 0)
        return funcalc.one(rank)
    if op == "zero":
        _arity(op, args, 0)
        return funcalc.zero(rank)
    raise SExprError(f"unknown function operator {op!r}")


def _set_genexpr(node, rank: int) -> GenExpr:
    op, args = _head(node)
    if op == "cyl":
        _arity(op, args, 1)
        w = word_literal(args[0], rank)
        return GenExpr.one(rank) if w.is_identity else GenExpr.of(RunWord.cylinder(w))
    if op == "pat":
        p = _pattern(args, rank)
        if not is_generator_pattern(p):
            raise OutOfSpan(f"{p} is not one of the generating patterns")
        return GenExpr.of(RunWord.pattern(p))
    if op == "all":
        _arity(op, args, 0)
        return GenExpr.one(rank)
    if op == "none":
        _arity(op, args, 0)
        return GenExpr.zero(rank)
    if op == "tr":
        _arity(op, args, 2)
        return _set_genexpr(args[1], rank).translate(word_literal(args[0], rank))
    if op in _SET_OPS:
        raise OutOfSpan(f"({op} ...) is not expressed through the generators")
    raise SExprError(f"unknown set operator {op!r}")


def to_genexpr(node, rank: int = DEFAULT_RANK) -> GenExpr:
    """Integer combination of cylinder and generating-pattern indicators."""
    op, args = _head(node)
    if op == "ind":
        _arity(op, args, 1)
        return _set_genexpr(args[0], rank)
    if op == "add":
        out = GenExpr.zero(rank)
        for a in args:
            out = out + to_genexpr(a, rank)
        return out
    if op == "sub":
        _arity(op, args, 2)
        return to_genexpr(args[0], rank) - to_genexpr(args[1], rank)
    if op == "scl":
        _arity(op, args, 2)
        c = _scalar(args[0])
        if c.denominator != 1:
            raise OutOfSpan("only integer combinations have K_0 classes")
        return to_genexpr(args[1], rank).scale(int(c))
    if op == "mul":
        _arity(op, args, at_least=1)
        out = to_genexpr(args[0], rank)
        for a in args[1:]:
            out = out * to_genexpr(a, rank)
        return out
    if op == "trf":
        _arity(op, args, 2)
        return to_genexpr(args[1], rank).translate(word_literal(args[0], rank))
    if op == "one":
        _arity(op, args, 0)
        return GenExpr.one(rank)
    if op == "zero":
        _arity(op, args, 0)
        return GenExpr.zero(rank)
    if op in _SET_OPS:
        raise SExprError("set expression where a function is expected; wrap it in (ind ...)")
    raise SExprError(f"unknown function operator {op!r}")


def parse_set(text: str, rank: int = DEFAULT_RANK) -> RegSet:
    return eval_set(parse(text), rank)


def parse_function(text: str, rank: int = DEFAULT_RANK) -> StepFunction:
    return eval_function(parse(text), rank)


def parse_genexpr(text: str, rank: int = DEFAULT_RANK) -> GenExpr:
    return to_genexpr(parse(text), rank)
