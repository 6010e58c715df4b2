"""Paradoxical decompositions of regular sets, and the witnesses built from them.

A certificate lists pieces ``V_k`` of a target ``E`` together with translators
``t_k``.  The first ``n`` pieces cover ``E``, the remaining ones cover ``E``
again, and the translates ``t_k.V_k`` are pairwise disjoint inside ``E``.  A
strong certificate also has disjoint pieces within each half and translates
that tile ``E``.  Every check below is an exact operation on regular sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import automata, funcalc, regset
from .freegroup import DEFAULT_RANK, Word, format_word, inverse
from .funcalc import StepFunction
from .regset import Pattern, RegSet
from .xprod import CcElement

WEAK = "weak"
STRONG = "strong"


@dataclass(frozen=True)
class ParadoxCert:
    target: RegSet
    pieces: tuple[RegSet, ...]
    translators: tuple[Word, ...]
    split: int
    strength: str = WEAK

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "translators", tuple(self.translators))
        if len(self.pieces) != len(self.translators):
            raise ValueError("one translator per piece")
        if not 0 < self.split < len(self.pieces):
            raise ValueError("both halves must be nonempty")
        if self.strength not in (WEAK, STRONG):
            raise ValueError(f"unknown strength {self.strength!r}")

    @property
    def halves(self) -> tuple[range, range]:
        return range(self.split), range(self.split, len(self.pieces))

    def images(self) -> list[RegSet]:
        return [regset.translate(t, V) for t, V in zip(self.translators, self.pieces)]

    def to_dict(self) -> dict:
        return {
            "target": repr(self.target),
            "split": self.split,
            "strength": self.strength,
            "pieces": [repr(V) for V in self.pieces],
            "translators": [format_word(t) for t in self.translators],
        }


@dataclass(frozen=True)
class Verdict:
    strength: str
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


def _pairwise_disjoint(sets: Sequence[RegSet]) -> bool:
    return all((sets[i] & sets[j]).is_empty for i in range(len(sets)) for j in range(i + 1, len(sets)))


def verify_cert(c: ParadoxCert) -> Verdict:
    """Check the conditions for ``c.strength`` and list the ones that fail."""
    E = c.target
    failures = []
    first, second = c.halves
    if any(V.is_empty for V in c.pieces):
        failures.append("empty piece")
    for name, half in (("first", first), ("second", second)):
        if regset.union(*(c.pieces[k] for k in half)) != E:
            failures.append(f"{name} half does not cover the target")
    images = c.images()
    if not _pairwise_disjoint(images):
        failures.append("translates not disjoint")
    if not all(img <= E for img in images):
        failures.append("translates leave the target")
    if c.strength == STRONG:
        for name, half in (("first", first), ("second", second)):
            if not _pairwise_disjoint([c.pieces[k] for k in half]):
                failures.append(f"{name} half pieces overlap")
        if regset.union(*images) != E:
            failures.append("translates do not tile the target")
    return Verdict(c.strength, tuple(failures))


def _require(c: ParadoxCert) -> ParadoxCert:
    v = verify_cert(c)
    if not v:
        raise AssertionError("constructed certificate fails: " + "; ".join(v.failures))
    return c


def a_power_set(rank: int = DEFAULT_RANK) -> RegSet:
    """``D = {a^-k : k >= 0}``."""
    nl = 2 * rank
    # state 0: inside A*, state 1: left it
    rows = [tuple(0 if c == 1 else 1 for c in range(nl)), tuple(1 for _ in range(nl))]
    return regset.RegSet(automata.normalized(nl, rows, [True, False], False), rank)


def standard_cert(rank: int = DEFAULT_RANK) -> ParadoxCert:
    """Strong certificate for ``E = G`` from the first-letter classes.

    With ``W(x)`` the words starting with ``x``: ``G = (W(a) u D) + a.(W(A) - D)``
    and ``G = W(b) + b.W(B)``; the translates of the four pieces are the four
    parts of ``G = (W(a) u D) + (W(A) - D) + W(b) + W(B)``.
    """
    if rank != 2:
        raise ValueError("standard_cert is stated for rank 2")
    a, A, b, B = (Word([c], rank) for c in range(4))
    W = {c: regset.starting_with_letter(c, rank) for c in range(4)}
    D = a_power_set(rank)
    P1, P2 = W[0] | D, W[1] - D
    pieces = (P1, regset.translate(a, P2), W[2], regset.translate(b, W[3]))
    translators = (Word.identity(rank), A, Word.identity(rank), B)
    return _require(ParadoxCert(regset.universe(rank), pieces, translators, 2, STRONG))


def _allowed_letters(t: Word) -> list[int]:
    bad = {t.codes[-1] ^ 1, t.codes[0] ^ 1}
    return [c for c in range(2 * t.rank) if c not in bad]


def cylinder_cert(t: Word) -> ParadoxCert:
    """Weak certificate for ``E = B(t)``: two copies of ``E`` mapped into
    the disjoint sub-cylinders ``B(t c1 t)`` and ``B(t c2 t)`` by ``t c_i``."""
    if t.is_identity:
        raise ValueError("t must be nontrivial")
    c1, c2 = _allowed_letters(t)[:2]
    E = regset.cylinder(t)
    translators = (t * Word([c1], t.rank), t * Word([c2], t.rank))
    return _require(ParadoxCert(E, (E, E), translators, 1, WEAK))


# ---------------------------------------------------------------------------
# partial isometries


@dataclass(frozen=True)
class Isometries:
    p: StepFunction
    v: CcElement
    w: CcElement

    def checks(self) -> dict[str, bool]:
        v, w, p = self.v, self.w, self.p
        vsv = v.adjoint() * v
        wsw = w.adjoint() * w
        P = CcElement.function(p)
        return {
            "p = vv*": v * v.adjoint() == P,
            "p = ww*": w * w.adjoint() == P,
            "p = v*v + w*w": vsv + wsw == P,
            "v*v, w*w diagonal": vsv.support == [Word.identity(p.rank)] and wsw.support == [Word.identity(p.rank)],
            "coefficients are projections": all(
                funcalc.is_projection(a) for X in (v, w) for a in X.terms.values()
            ),
        }

    @property
    def passed(self) -> bool:
        return all(self.checks().values())


def cert_to_isometries(c: ParadoxCert) -> Isometries:
    """``v = sum_{k <= n} 1_{V_k} u_{t_k^-1}`` and ``w`` likewise over the second half.

    Then ``vv* = sum 1_{V_k} = 1_E``, ``v*v = sum 1_{t_k.V_k}`` and the two
    ranges tile ``E``.
    """
    if c.strength != STRONG or not verify_cert(c):
        raise ValueError("strengthen first: isometries need a verified strong certificate")
    rank = c.target.rank
    first, second = c.halves

    def build(half):
        return CcElement(
            [(inverse(c.translators[k]), funcalc.indicator(c.pieces[k])) for k in half], rank
        )

    iso = Isometries(funcalc.indicator(c.target), build(first), build(second))
    if not iso.passed:
        raise AssertionError("isometry identities fail")
    return iso


# ---------------------------------------------------------------------------
# infiniteness witnesses


def _as_function(x) -> StepFunction:
    if isinstance(x, StepFunction):
        return x
    if isinstance(x, Pattern):
        return funcalc.indicator(regset.pattern_set(x))
    if isinstance(x, Word):
        return funcalc.indicator(regset.cylinder(x))
    if isinstance(x, RegSet):
        return funcalc.indicator(x)
    raise TypeError(f"cannot read {x!r} as a projection")


def strictly_below_mod_I(f: StepFunction, g: StepFunction) -> bool:
    """``f <= g`` and ``f != g`` for projections, both modulo finite sets."""
    return funcalc.equals_mod_I(f * g, f) and not funcalc.equals_mod_I(f, g)


def obstruction_product(p: StepFunction, obstructions: Sequence[StepFunction]) -> StepFunction:
    r = p
    for q in obstructions:
        r = r * (p - q)
    return r


def _check_obstructions(p: StepFunction, obs: Sequence[StepFunction]) -> StepFunction:
    if not funcalc.is_projection(p):
        raise ValueError("p is not a projection")
    for q in obs:
        if not funcalc.is_projection(q) or not strictly_below_mod_I(q, p):
            raise ValueError("malformed obstruction: each p_i must be a projection strictly below p")
    r = obstruction_product(p, obs)
    if funcalc.is_zero_mod_I(r):
        raise ValueError("the obstructions exhaust p")
    return r


def _other_letter(avoid: Sequence[int], rank: int) -> int:
    banned = {c for x in avoid for c in (x, x ^ 1)}
    return min(c for c in range(2 * rank) if c not in banned)


def _pure_cylinder_witness(s: Word) -> Word:
    if s.codes[-1] != s.codes[0] ^ 1:
        return s
    c = min(c for c in range(2 * s.rank) if c not in (s.codes[-1] ^ 1, s.codes[0] ^ 1))
    return s * Word([c], s.rank)


def _cylinder_candidates(s: Word, limit: int):
    # s = x alpha; t = x (alpha beta^-1)^M alpha beta x^-1 maps B(s) onto
    # B(x (alpha beta^-1)^M alpha beta alpha), inside B(x (alpha beta^-1)^M alpha^N beta)
    rank = s.rank
    x, alpha = s[:-1], s.codes[-1]
    beta = _other_letter([alpha], rank)
    for M in range(limit + 1):
        core = Word([alpha, beta ^ 1] * M + [alpha, beta], rank)
        yield x * core * inverse(x)


def _pattern_candidates(p: Pattern, limit: int):
    # p = B(h c1^N ... cm^N f); t = h c1^(N+1) c2 ... cm f g^-1 f h^-1
    rank = p.rank
    h, tail, f = p.head, p.tail, p.final
    alpha = tail[0]
    g = alpha if f not in (alpha, alpha ^ 1) else _other_letter([f], rank)
    for N in range(limit + 1):
        core = Word([alpha] * (N + 1) + list(tail[1:]) + [f, g ^ 1, f], rank)
        yield h * core * inverse(h)


@dataclass(frozen=True)
class InfinitenessWitness:
    t: Word
    p: StepFunction
    r: StepFunction

    def verify(self) -> bool:
        return strictly_below_mod_I(funcalc.translate(self.t, self.p), self.r)


def infiniteness_witness(p, obstructions: Sequence = (), limit: int = 64) -> InfinitenessWitness:
    """Find ``t`` with ``t.p`` strictly below ``r = (p - p_1)...(p - p_n)`` mod I.

    ``p`` is a cylinder word or a pattern; obstructions are projections (or
    generators) strictly below ``p``.  Without obstructions a cylinder uses
    ``t = s`` (or ``s c`` when ``s s`` cancels) and a pattern uses its first
    tail letter conjugated by the head.  With obstructions the candidates run
    through the families that avoid every obstruction for large enough
    exponent; the first one that verifies is returned.
    """
    P = _as_function(p)
    obs = [_as_function(q) for q in obstructions]
    r = _check_obstructions(P, obs)
    if isinstance(p, Word):
        if p.is_identity:
            raise ValueError("p must be a proper cylinder")
        cands = [_pure_cylinder_witness(p)] if not obs else _cylinder_candidates(p, limit)
    elif isinstance(p, Pattern):
        first = p.head * Word([p.tail[0]], p.rank) * inverse(p.head)
        cands = [first] if not obs else _pattern_candidates(p, limit)
    else:
        raise TypeError("p must be a cylinder word or a pattern")
    for t in cands:
        w = InfinitenessWitness(t, P, r)
        if w.verify():
            return w
    raise ValueError("no witness within the search limit")


# ---------------------------------------------------------------------------
# three-colouring


def _coloring_machine(rank: int) -> automata.Machine:
    """Colour of ``x = a^k w`` (``w`` not starting with ``a^{+-1}``) is ``k mod 3``."""
    nl = 2 * rank
    # 0: start; 1..3: a-run with k = 1,2,0 (mod 3) positive; 4..6: A-run with k = -1,-2,0; 7..9: frozen colour 0,1,2
    frozen = {0: 7, 1: 8, 2: 9}
    colour = [0, 1, 2, 0, 2, 1, 0, 0, 1, 2]
    rows = []
    for q in range(10):
        row = []
        for c in range(nl):
            if q >= 7:
                row.append(q)
            elif c == 0 and q in (0, 1, 2, 3):
                row.append({0: 1, 1: 2, 2: 3, 3: 1}[q])
            elif c == 1 and q in (0, 4, 5, 6):
                row.append({0: 4, 4: 5, 5: 6, 6: 4}[q])
            else:
                row.append(frozen[colour[q]])
        rows.append(tuple(row))
    return automata.normalized(nl, rows, [Fraction(x) for x in colour], Fraction(0))


@dataclass(frozen=True)
class ThreeColoring:
    parts: tuple[StepFunction, StepFunction, StepFunction]
    t: Word

    def checks(self) -> dict[str, bool]:
        e, f, h = self.parts
        one = funcalc.one(e.rank)
        zero = funcalc.zero(e.rank)
        out = {"partition of 1": e + f + h == one}
        out["projections"] = all(funcalc.is_projection(x) for x in self.parts)
        for name, x in zip("efh", self.parts):
            out[f"t.{name} orthogonal to {name}"] = funcalc.translate(self.t, x) * x == zero
        te = funcalc.translate(self.t, e)
        out["t.e <= f + h = 1 - e"] = te * (f + h) == te and f + h == one - e
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks().values())


def three_coloring(rank: int = DEFAULT_RANK) -> ThreeColoring:
    colour = StepFunction(_coloring_machine(rank), rank)
    parts = tuple(funcalc.indicator(colour.level_set(Fraction(k))) for k in range(3))
    tc = ThreeColoring(parts, Word([0], rank))
    if not tc.passed:
        raise AssertionError("colouring identities fail")
    return tc
