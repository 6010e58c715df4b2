"""Finite sums ``sum_t a_t u_t`` with step-function coefficients.

Multiplication follows ``(a u_s)(b u_t) = a (s.b) u_{st}`` and the adjoint is
``(a u_s)* = (s^-1.a) u_{s^-1}`` (coefficients are real).  Identities are
checked exactly; "mod I" only enters through the predicates.

The amenability elements are handled in the integer-valued scaling
``T^_i = sqrt(i) T_i``: coefficient ``1_B(t)`` at ``u_t`` for ``|t| < i``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import automata, funcalc, regset
from .freegroup import DEFAULT_RANK, Word, inverse, sphere
from .funcalc import StepFunction


class CcElement:
    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping[Word, StepFunction] | Iterable = (), rank: int = DEFAULT_RANK):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, StepFunction] = {}
        for t, a in items:
            if t.rank != rank or a.rank != rank:
                raise ValueError("rank mismatch")
            acc[t] = acc[t] + a if t in acc else a
        zero = funcalc.zero(rank)
        self.terms = {t: a for t, a in sorted(acc.items(), key=lambda kv: kv[0].codes) if a != zero}
        self.rank = rank

    # -- constructors ----------------------------------------------------
    @classmethod
    def unitary(cls, s: Word) -> "CcElement":
        return cls({s: funcalc.one(s.rank)}, s.rank)

    @classmethod
    def function(cls, f: StepFunction) -> "CcElement":
        return cls({Word.identity(f.rank): f}, f.rank)

    @classmethod
    def zero(cls, rank: int = DEFAULT_RANK) -> "CcElement":
        return cls({}, rank)

    # -- algebra ---------------------------------------------------------
    def coefficient(self, t: Word) -> StepFunction:
        return self.terms.get(t, funcalc.zero(self.rank))

    def __add__(self, other: "CcElement") -> "CcElement":
        return CcElement(list(self.terms.items()) + list(other.terms.items()), self.rank)

    def __neg__(self) -> "CcElement":
        return CcElement({t: -a for t, a in self.terms.items()}, self.rank)

    def __sub__(self, other: "CcElement") -> "CcElement":
        return self + (-other)

    def __mul__(self, other) -> "CcElement":
        if isinstance(other, CcElement):
            return mul(self, other)
        return CcElement({t: a * other for t, a in self.terms.items()}, self.rank)

    def __rmul__(self, other) -> "CcElement":
        return CcElement({t: other * a for t, a in self.terms.items()}, self.rank)

    def __eq__(self, other) -> bool:
        return isinstance(other, CcElement) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{t or 'e'}: {a!r}" for t, a in self.terms.items())
        return f"CcElement({{{inner}}})"

    def adjoint(self) -> "CcElement":
        return adjoint(self)

    @property
    def support(self) -> list[Word]:
        return list(self.terms)


def mul(S: CcElement, T: CcElement) -> CcElement:
    out = []
    for s, a in S.terms.items():
        for t, b in T.terms.items():
            out.append((s * t, a * funcalc.translate(s, b)))
    return CcElement(out, S.rank)


def adjoint(S: CcElement) -> CcElement:
    return CcElement({inverse(s): funcalc.translate(inverse(s), a) for s, a in S.terms.items()}, S.rank)


def inner(S: CcElement, T: CcElement) -> StepFunction:
    """``<S, T> = sum_s a_s^* b_s``."""
    out = funcalc.zero(S.rank)
    for s, a in S.terms.items():
        b = T.terms.get(s)
        if b is not None:
            out = out + a * b
    return out


def norm2_sq(S: CcElement, mod_I: bool = True) -> Fraction:
    return funcalc.sup_norm(inner(S, S), mod_I=mod_I)


def equals_mod_I(S: CcElement, T: CcElement) -> bool:
    D = S - T
    return all(funcalc.is_zero_mod_I(a) for a in D.terms.values())


def is_function(S: CcElement) -> bool:
    """True when ``S`` lies in the diagonal ``l^infty(G)``, i.e. only ``u_e`` occurs."""
    return all(t.is_identity for t in S.terms)


# ---------------------------------------------------------------------------
# amenability elements


def _ball_indicator(t: Word) -> StepFunction:
    if t.is_identity:
        return funcalc.one(t.rank)
    return funcalc.indicator(regset.cylinder(t))


def amen_T(i: int, rank: int = DEFAULT_RANK) -> CcElement:
    """``sqrt(i) T_i = sum_{|t| < i} 1_B(t) u_t``."""
    if i < 1:
        raise ValueError("i must be positive")
    return CcElement({t: _ball_indicator(t) for j in range(i) for t in sphere(j, rank)}, rank)


def level_sum(j: int, rank: int = DEFAULT_RANK) -> StepFunction:
    """``sum_{|t| = j} 1_B(t)``, which is the indicator of ``|x| >= j``."""
    return funcalc.indicator(regset.length_at_least(j, rank))


@lru_cache(maxsize=None)
def _length_count(lo: int, hi: int, rank: int) -> StepFunction:
    """``x -> #{j in [lo, hi] : |x| >= j}``."""
    nl = 2 * rank
    top = max(hi, 0)
    rows = [tuple(min(q + 1, top) for _ in range(nl)) for q in range(top + 1)]
    outs = [Fraction(max(0, min(q, hi) - lo + 1)) for q in range(top + 1)]
    return StepFunction(automata.normalized(nl, rows, outs, Fraction(0)), rank)


def amen_norm(i: int, rank: int = DEFAULT_RANK) -> StepFunction:
    """``<T^_i, T^_i> = sum_{j < i} level_sum(j)``, built in one machine."""
    return _length_count(0, i - 1, rank)


@lru_cache(maxsize=None)
def _lcp_class(s: Word, l: int) -> regset.RegSet:
    """Words whose longest common prefix with ``s`` has length exactly ``l``."""
    base = regset.universe(s.rank) if l == 0 else regset.cylinder(s[:l])
    if l == len(s):
        return base
    return base - regset.cylinder(s[: l + 1])


@lru_cache(maxsize=None)
def _prefix_term(s: Word, j: int) -> StepFunction:
    """``1_B(g) . s.1_B(s^-1 g)`` for the prefix ``g = s[:j]``."""
    g = s[:j]
    return _ball_indicator(g) * funcalc.translate(s, _ball_indicator(inverse(s) * g))


def amen_overlap_terms(i: int, s: Word) -> StepFunction:
    """``<T^_i, u_s T^_i> = sum_{|g|<i, |s^-1 g|<i} 1_B(g) . s.1_B(s^-1 g)``.

    Terms are grouped by ``j = |g|`` and ``l = lcp(g, s)``.  For ``l < j`` the
    word ``s^-1 g`` is ``(s[l:])^-1 g[l:]`` without cancellation, so
    ``s.B(s^-1 g) = B(g)`` and the term is ``1_B(g)``; summing over all such
    ``g`` of length ``j`` gives the indicator of ``{|x| >= j, lcp(x, s) = l}``.
    Only the ``|s| + 1`` prefixes ``g = s[:j]`` need an explicit translate.
    The result is exact (no finite set is dropped).
    """
    rank = s.rank
    n = len(s)
    terms = []
    for l in range(n + 1):
        # l < j <= i-1 and |s| + j - 2l < i
        hi = min(i - 1, i - n + 2 * l - 1)
        if hi > l:
            terms.append(funcalc.indicator(_lcp_class(s, l)) * _length_count(l + 1, hi, rank))
    for j in range(min(n, i - 1) + 1):
        if n - j < i:
            terms.append(_prefix_term(s, j))
    return funcalc.total(terms, rank)


def amen_overlap_direct(i: int, s: Word) -> StepFunction:
    """Same quantity through the generic crossed-product arithmetic (small i only)."""
    T = amen_T(i, s.rank)
    return inner(T, mul(CcElement.unitary(s), T))


# The prefix terms are 1_B(s[:j]) . s.1_B(s[j:]^-1) = 1_{lcp(x,s) = j}, so every
# amenability quantity depends on x only through l = lcp(x, s) and |x|.  The
# formulas below are that bookkeeping; the grouped and direct versions above
# are the exact cross-checks.


def _overlap_value(i: int, n: int, l: int, length: int) -> int:
    hi = min(length, i - 1, i - n + 2 * l - 1)
    return max(0, hi - l) + (1 if l <= i - 1 and n - l < i else 0)


def _norm_value(i: int, length: int) -> int:
    return min(length + 1, i)


def _defect_value(i: int, n: int, l: int, length: int) -> int:
    # |s^-1 x| = |x| + |s| - 2 lcp(x, s)
    return _norm_value(i, length + n - 2 * l) + _norm_value(i, length) - 2 * _overlap_value(i, n, l, length)


def _lcp_length_machine(s: Word, cap: int, value) -> automata.Machine:
    """Uncanonicalized machine tracking ``(lcp(x, s), min(|x|, cap))``."""
    nl = 2 * s.rank
    codes = s.codes
    n = len(codes)
    start = (True, 0, 0)
    index = {start: 0}
    states = [start]
    rows, outs = [], []
    k = 0
    while k < len(states):
        matched, l, length = states[k]
        outs.append(Fraction(value(l, length)))
        row = []
        for c in range(nl):
            if matched and l < n and c == codes[l]:
                nxt = (True, l + 1, min(length + 1, cap))
            else:
                nxt = (False, l, min(length + 1, cap))
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(states)
                states.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        k += 1
    return automata.Machine(nl, tuple(rows), tuple(outs), Fraction(0))


def _as_function(m: automata.Machine, rank: int) -> StepFunction:
    return StepFunction(automata.normalized(m.nletters, m.trans, m.out, m.zero), rank)


def amen_overlap(i: int, s: Word) -> StepFunction:
    """``<T^_i, u_s T^_i>`` (so ``T_i T_i^*(s)`` is this divided by ``i``)."""
    cap = i + len(s) + 1
    return _as_function(_lcp_length_machine(s, cap, lambda l, L: _overlap_value(i, len(s), l, L)), s.rank)


def amen_defect(i: int, s: Word) -> StepFunction:
    """``<X, X>`` for ``X = u_s T^_i - T^_i``, i.e. ``s.N + N - 2 <T^_i, u_s T^_i>``."""
    cap = i + len(s) + 1
    return _as_function(_lcp_length_machine(s, cap, lambda l, L: _defect_value(i, len(s), l, L)), s.rank)


def amen_defect_generic(i: int, s: Word) -> StepFunction:
    N = amen_norm(i, s.rank)
    return funcalc.translate(s, N) + N - 2 * amen_overlap_terms(i, s)


def infinite_values_of(s: Word, cap: int, value) -> frozenset:
    """Values taken on infinite sets by the lcp/length function (no minimization)."""
    return automata.ReducedGraph(_lcp_length_machine(s, cap, value)).infinite[0]


def amen_norm2_sq(i: int, s: Word) -> Fraction:
    """``||u_s T_i - T_i||_2^2`` (unscaled), evaluated modulo finite sets."""
    n = len(s)
    vals = infinite_values_of(s, i + n + 1, lambda l, L: _defect_value(i, n, l, L))
    return max((abs(v) for v in vals), default=Fraction(0)) / i


def recursion_defect_values(n: int, s: Word) -> frozenset:
    """Infinite values of ``(n+1) T_{n+1}T^*_{n+1}(s) - n T_n T^*_n(s)``."""
    k = len(s)
    return infinite_values_of(
        s, n + k + 2, lambda l, L: _overlap_value(n + 1, k, l, L) - _overlap_value(n, k, l, L)
    )


def cauchy_schwarz_values(s: Word) -> frozenset:
    """Infinite values of ``T_{|s|} T^*_{|s|}(s)``."""
    k = len(s)
    vals = infinite_values_of(s, 2 * k + 1, lambda l, L: _overlap_value(k, k, l, L))
    return frozenset(Fraction(v) / k for v in vals)
