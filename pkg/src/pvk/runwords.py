"""Symbolic run words: the cylinder and pattern generators as run sequences.

A :class:`RunWord` is a sequence of runs ``(letter, count, open)``.  It stands
for the set of reduced words whose maximal runs start as prescribed: an exact
run has exactly ``count`` copies, an open run at least ``count``.  The last run
is only a prefix condition (at least ``count`` copies, anything may follow).
The empty sequence is the whole group.

Cylinders ``B(t)`` and pattern sets ``B(y c1^N ... cm^N x)`` are run words, and
run words are closed under intersection, so a :class:`GenExpr` (an integer
combination of run-word indicators) is closed under products.  Translation by a
letter turns one run word into a short integer combination of run words.
These are exact set identities; only the identity word ``e`` may be lost
(``x.B(x^-1)`` is the complement of ``B(x)``, which contains ``e``), and
callers compare modulo finite sets anyway.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import funcalc, regset
from .freegroup import DEFAULT_RANK, Word, letter_char
from .regset import Pattern

Run = tuple[int, int, bool]


@dataclass(frozen=True, order=True)
class RunWord:
    runs: tuple[Run, ...]
    rank: int = DEFAULT_RANK

    def __post_init__(self):
        runs = tuple((int(c), int(k), bool(o)) for c, k, o in self.runs)
        if runs:
            c, k, _ = runs[-1]
            runs = runs[:-1] + ((c, k, False),)
        object.__setattr__(self, "runs", runs)
        nl = 2 * self.rank
        for i, (c, k, _) in enumerate(runs):
            if not 0 <= c < nl or k < 1:
                raise ValueError(f"bad run {runs[i]}")
            if i and runs[i - 1][0] in (c, c ^ 1):
                raise ValueError("adjacent runs must use different, non-inverse letters")

    @property
    def is_universe(self) -> bool:
        return not self.runs

    def regset(self) -> regset.RegSet:
        return regset.from_runs(self.runs, self.rank) if self.runs else regset.universe(self.rank)

    def indicator(self) -> funcalc.StepFunction:
        return funcalc.indicator(self.regset())

    def __str__(self) -> str:
        if not self.runs:
            return "*"
        parts = []
        for c, k, o in self.runs:
            parts.append(letter_char(c) + (str(k) if k > 1 else "") + ("+" if o else ""))
        return " ".join(parts)

    # -- constructors ----------------------------------------------------
    @classmethod
    def universe(cls, rank: int = DEFAULT_RANK) -> "RunWord":
        return cls((), rank)

    @classmethod
    def cylinder(cls, t: Word) -> "RunWord":
        if t.is_identity:
            raise ValueError("cylinder of the identity")
        return cls(tuple(regset.runs_of_word(t)), t.rank)

    @classmethod
    def pattern(cls, p: Pattern) -> "RunWord":
        return cls(tuple(p.runs()), p.rank)

    # -- algebra ---------------------------------------------------------
    def intersect(self, other: "RunWord") -> "RunWord | None":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return _intersect(self.runs, other.runs, self.rank)

    def translate_letter(self, x: int) -> "GenExpr":
        """``x . 1_self`` as a combination of run words (exact off ``{e}``)."""
        return _translate_letter(self, x)

    def translate(self, g: Word) -> "GenExpr":
        return GenExpr({self: 1}, self.rank).translate(g)


def _intersect(r1: tuple[Run, ...], r2: tuple[Run, ...], rank: int) -> RunWord | None:
    if len(r1) > len(r2):
        r1, r2 = r2, r1
    if not r1:
        return RunWord(r2, rank)
    out: list[Run] = []
    n1 = len(r1)
    for i, (c1, k1, o1) in enumerate(r1):
        c2, k2, o2 = r2[i]
        if c1 != c2:
            return None
        last1 = i == n1 - 1
        last2 = i == len(r2) - 1
        if last1 and last2:
            out.append((c1, max(k1, k2), False))
        elif last1:
            # r1 only asks for at least k1 copies here
            if o2:
                out.append((c1, max(k1, k2), True))
            elif k2 >= k1:
                out.append((c1, k2, False))
            else:
                return None
        else:
            if not o1 and not o2:
                if k1 != k2:
                    return None
                out.append((c1, k1, False))
            elif not o1:
                if k1 < k2:
                    return None
                out.append((c1, k1, False))
            elif not o2:
                if k2 < k1:
                    return None
                out.append((c1, k2, False))
            else:
                out.append((c1, max(k1, k2), True))
    out.extend(r2[n1:])
    return RunWord(tuple(out), rank)


def _translate_letter(w: RunWord, x: int) -> "GenExpr":
    rank = w.rank
    runs = w.runs
    if not runs:
        return GenExpr({w: 1}, rank)
    c, k, o = runs[0]
    rest = runs[1:]
    if c == x ^ 1:
        if k > 1:
            return GenExpr({RunWord(((c, k - 1, o),) + rest, rank): 1}, rank)
        if not rest:
            # x . B(x^-1) = G \ B(x)
            return GenExpr({RunWord.universe(rank): 1, RunWord(((x, 1, False),), rank): -1}, rank)
        if o:
            return GenExpr({RunWord(rest, rank): 1, RunWord(((c, 1, True),) + rest, rank): 1}, rank)
        return GenExpr({RunWord(rest, rank): 1}, rank)
    if c == x:
        return GenExpr({RunWord(((c, k + 1, o),) + rest, rank): 1}, rank)
    return GenExpr({RunWord(((x, 1, False),) + runs, rank): 1}, rank)


class GenExpr:
    """An integer combination of run-word indicators (kept sparse and sorted)."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: dict | None = None, rank: int = DEFAULT_RANK):
        clean: dict[RunWord, int] = {}
        for w, c in (terms or {}).items():
            if w.rank != rank:
                raise ValueError("rank mismatch")
            c = int(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in sorted(clean.items()) if c}
        self.rank = rank

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, rank: int = DEFAULT_RANK) -> "GenExpr":
        return cls({}, rank)

    @classmethod
    def one(cls, rank: int = DEFAULT_RANK) -> "GenExpr":
        return cls({RunWord.universe(rank): 1}, rank)

    @classmethod
    def of(cls, w: RunWord, coef: int = 1) -> "GenExpr":
        return cls({w: coef}, w.rank)

    # -- arithmetic ------------------------------------------------------
    def __iter__(self) -> Iterator[tuple[RunWord, int]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, GenExpr) and self.terms == other.terms and self.rank == other.rank

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "GenExpr") -> "GenExpr":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return GenExpr(t, self.rank)

    def __neg__(self) -> "GenExpr":
        return GenExpr({w: -c for w, c in self.terms.items()}, self.rank)

    def __sub__(self, other: "GenExpr") -> "GenExpr":
        return self + (-other)

    def scale(self, k: int) -> "GenExpr":
        return GenExpr({w: k * c for w, c in self.terms.items()}, self.rank)

    def __mul__(self, other: "GenExpr") -> "GenExpr":
        t: dict[RunWord, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1.intersect(w2)
                if w is not None:
                    t[w] = t.get(w, 0) + c1 * c2
        return GenExpr(t, self.rank)

    def translate(self, g: Word) -> "GenExpr":
        out = self
        for x in reversed(g.codes):
            acc = GenExpr.zero(self.rank)
            for w, c in out.terms.items():
                acc = acc + w.translate_letter(x).scale(c)
            out = acc
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"GenExpr({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            parts.append(f"{c:+d}[{w}]")
        return " ".join(parts)

    def to_dict(self) -> list:
        return [[str(w), c] for w, c in self.terms.items()]

    def to_stepfunction(self) -> funcalc.StepFunction:
        return funcalc.combination(((c, w.regset()) for w, c in self.terms.items()), self.rank)


def total(exprs: Iterable[GenExpr], rank: int = DEFAULT_RANK) -> GenExpr:
    out = GenExpr.zero(rank)
    for e in exprs:
        out = out + e
    return out


def is_generator_pattern(p: Pattern) -> bool:
    """Patterns of the generating family: the tail alternates between two
    generators with one common sign and the final letter continues the
    alternation."""
    letters = p.tail + (p.final,)
    sign = letters[0] & 1
    if any(c & 1 != sign for c in letters):
        return False
    if any(x == y for x, y in zip(letters, letters[1:])):
        return False
    return all(x == y for x, y in zip(letters, letters[2:]))
