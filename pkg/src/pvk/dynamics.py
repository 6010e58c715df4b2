"""Witnesses for the action properties: topological freeness, minimality,
amenability, and the cylinder locator they share.

Each witness comes back as a :class:`WitnessReport` whose ``replay`` reruns
every recorded identity from the inputs alone.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import automata, funcalc, regset, xprod
from .freegroup import DEFAULT_RANK, Word, ball, format_word, inverse, shortlex_key
from .funcalc import StepFunction

TOPFREE = "topfree"
MINIMAL = "minimal"
AMENABLE = "amenable"


@dataclass
class WitnessReport:
    property: str
    inputs: dict
    witnesses: dict
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def replay(self) -> "WitnessReport":
        return _REPLAY[self.property](self)

    def to_dict(self) -> dict:
        def show(v):
            if isinstance(v, Word):
                return format_word(v)
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (list, tuple)):
                return [show(x) for x in v]
            if isinstance(v, dict):
                return {k: show(x) for k, x in v.items()}
            if isinstance(v, (regset.RegSet, StepFunction)):
                return repr(v)
            return v

        return {
            "property": self.property,
            "inputs": show(self.inputs),
            "witnesses": show(self.witnesses),
            "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
            "extra": show(self.extra),
            "verdict": "pass" if self.passed else "fail",
        }


# ---------------------------------------------------------------------------
# topological freeness


def topfree_constraints(s: Word, t: Word, r: Word) -> bool:
    """``|r| > max(|t|, |s|)``, ``r`` starts with ``s`` and ``r s`` is reduced."""
    return (
        len(r) > max(len(t), len(s))
        and r.codes[: len(s)] == s.codes
        and r.codes[-1] != s.codes[0] ^ 1
    )


def _shortest_r(s: Word, t: Word) -> Word:
    n = max(len(t), len(s)) + 1
    while True:
        for r in sorted((s * w for w in _extensions(s, n - len(s))), key=shortlex_key):
            if topfree_constraints(s, t, r):
                return r
        n += 1


def _extensions(s: Word, k: int) -> Iterable[Word]:
    # reduced words w of length k with s w reduced
    rank = s.rank
    for w in itertools.product(range(2 * rank), repeat=k):
        full = s.codes + w
        if all(full[i + 1] != full[i] ^ 1 for i in range(len(full) - 1)):
            yield Word(w, rank)


def _topfree_checks(s: Word, t: Word, r: Word) -> list:
    q = regset.cylinder(r * s)
    tq = regset.translate(t, q)
    return [
        ("r meets the constraints", topfree_constraints(s, t, r)),
        ("q <= B(s)", q <= regset.cylinder(s)),
        ("t.q != q mod I", not regset.equals_mod_finite(tq, q)),
    ]


def topfree_witness(s: Word, t: Word, r: Word | None = None) -> WitnessReport:
    """``q = B(r s)`` below ``p = 1_B(s)`` with ``t.q != q``; ``r`` is the
    shortlex-least word meeting the constraints unless given."""
    if s.is_identity or t.is_identity:
        raise ValueError("s and t must be nontrivial")
    if r is None:
        r = _shortest_r(s, t)
    elif not topfree_constraints(s, t, r):
        raise ValueError(f"r = {format_word(r)} violates the constraints")
    return WitnessReport(
        TOPFREE, {"s": s, "t": t}, {"r": r, "q": r * s}, _topfree_checks(s, t, r)
    )


def _replay_topfree(rep: WitnessReport) -> WitnessReport:
    s, t, r = rep.inputs["s"], rep.inputs["t"], rep.witnesses["r"]
    return WitnessReport(TOPFREE, dict(rep.inputs), dict(rep.witnesses), _topfree_checks(s, t, r))


# ---------------------------------------------------------------------------
# minimality


def _partner(c: int) -> int:
    # a <-> b, A <-> B (the symmetry of the generating family)
    return {0: 2, 1: 3, 2: 0, 3: 1}.get(c, c ^ 2)


def _minimality_checks(r: Word, s: Word, t: Word) -> list:
    c = r.codes[-1]
    d = _partner(c)
    rank = r.rank
    second = r * Word([d, c ^ 1], rank)
    lhs = funcalc.translate(s, funcalc.indicator(regset.cylinder(r))) + funcalc.translate(
        t, funcalc.indicator(regset.cylinder(second))
    )
    return [
        ("s.1_B(r) = 1_B(last letter)", funcalc.translate(s, funcalc.indicator(regset.cylinder(r)))
         == funcalc.indicator(regset.cylinder(Word([c], rank)))),
        ("s.1_B(r) + t.1_B(r d c^-1) = 1 mod I", funcalc.equals_mod_I(lhs, funcalc.one(rank))),
    ]


def minimality_witness(r: Word) -> WitnessReport:
    """``s = (r_1 ... r_{|r|-1})^-1`` and ``t = c d^-1 c^-1 s`` where ``c`` is
    the last letter of ``r`` and ``d`` its partner (``a <-> b``)."""
    if r.is_identity:
        raise ValueError("r must be nontrivial")
    c = r.codes[-1]
    d = _partner(c)
    s = inverse(r[:-1])
    t = Word([c, d ^ 1, c ^ 1], r.rank) * s
    return WitnessReport(MINIMAL, {"r": r}, {"s": s, "t": t}, _minimality_checks(r, s, t))


def _replay_minimal(rep: WitnessReport) -> WitnessReport:
    r = rep.inputs["r"]
    return WitnessReport(
        MINIMAL, dict(rep.inputs), dict(rep.witnesses), _minimality_checks(r, rep.witnesses["s"], rep.witnesses["t"])
    )


# ---------------------------------------------------------------------------
# cylinder locator


def sub_generator(f: StepFunction, max_length: int = 12) -> Word:
    """The shortlex-first ``t`` with ``1_B(t) <= f`` modulo finite sets."""
    if funcalc.is_zero_mod_I(f):
        raise ValueError("f vanishes modulo finite sets")
    g = automata.reduced_graph(f.machine)
    one = frozenset({Fraction(1)})
    frontier = [((), 0)]
    for _ in range(max_length):
        nxt = []
        for codes, v in frontier:
            for c in range(2 * f.rank):
                w = g.edges[v].get(c)
                if w is None:
                    continue
                if g.infinite[w] == one:
                    return Word(codes + (c,), f.rank)
                if g.infinite[w]:
                    nxt.append((codes + (c,), w))
        frontier = nxt
    raise ValueError("no cylinder found within the length bound")


# ---------------------------------------------------------------------------
# amenability


def _amen_checks(i_max: int, s_list: Sequence[Word], rec_max: int) -> tuple[list, dict]:
    checks = []
    worst = None
    rows = []
    for i in range(1, i_max + 1):
        N = xprod.amen_norm(i)
        checks.append((f"<T_{i},T_{i}> = 1 mod I", funcalc.infinite_values(N) == frozenset({Fraction(i)})))
        for s in s_list:
            if len(s) > i:
                continue
            v = xprod.amen_norm2_sq(i, s)
            bound = Fraction(2 * len(s), i)
            slack = bound - v
            ok = slack >= 0
            rows.append((i, s, v, bound))
            if not ok:
                checks.append((f"bound i={i} s={format_word(s) or 'e'}", False))
            if worst is None or slack < worst[0]:
                worst = (slack, i, s)
    checks.append(("||u_s T_i - T_i||_2^2 <= 2|s|/i for all pairs", all(v <= b for _, _, v, b in rows)))
    rec_ok = True
    for n in range(1, rec_max + 1):
        for s in s_list:
            if len(s) <= n and xprod.recursion_defect_values(n, s) != frozenset({Fraction(1)}):
                rec_ok = False
                checks.append((f"recursion n={n} s={format_word(s) or 'e'}", False))
    checks.append((f"(n+1)T_(n+1)T*_(n+1)(s) - nT_nT*_n(s) = 1 for n <= {rec_max}", rec_ok))
    cs_ok = all(
        all(0 <= v <= 1 for v in xprod.cauchy_schwarz_values(s)) for s in s_list if not s.is_identity
    )
    checks.append(("0 <= T_|s| T*_|s|(s) <= 1 mod I", cs_ok))
    extra = {
        "pairs": len(rows),
        "worst_slack": worst[0] if worst else Fraction(0),
        "worst_pair": [worst[1], worst[2]] if worst else [],
    }
    return checks, extra


def amenability_suite(i_max: int, s_list: Sequence[Word] | None = None, rec_max: int | None = None,
                      rank: int = DEFAULT_RANK) -> WitnessReport:
    """Exact checks of the averaging elements ``T_i`` for ``i <= i_max``.

    ``s_list`` defaults to the ball of radius ``min(i_max, 4)``; pairs with
    ``|s| > i`` are skipped.  The recursion identity is checked for
    ``|s| <= n <= rec_max`` (default ``min(i_max, 16)``).
    """
    if i_max < 1:
        raise ValueError("i_max must be positive")
    if s_list is None:
        s_list = ball(min(i_max, 4), rank)
    if rec_max is None:
        rec_max = min(i_max, 16)
    s_list = list(s_list)
    checks, extra = _amen_checks(i_max, s_list, rec_max)
    return WitnessReport(
        AMENABLE, {"i_max": i_max, "s_list": s_list, "rec_max": rec_max}, {}, checks, extra
    )


def _replay_amen(rep: WitnessReport) -> WitnessReport:
    return amenability_suite(rep.inputs["i_max"], rep.inputs["s_list"], rep.inputs["rec_max"])


_REPLAY = {TOPFREE: _replay_topfree, MINIMAL: _replay_minimal, AMENABLE: _replay_amen}
