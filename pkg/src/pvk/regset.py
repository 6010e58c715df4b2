"""Regular subsets of the free group, as canonical boolean Moore machines."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from . import automata
from .automata import Machine
from .freegroup import DEFAULT_RANK, Word, format_word, parse_word


class RegSet:
    """A regular set of reduced words.  Structural equality is set equality."""

    __slots__ = ("machine", "rank")

    def __init__(self, machine: Machine, rank: int):
        if machine.nletters != 2 * rank:
            raise ValueError("alphabet does not match rank")
        self.machine = machine
        self.rank = rank

    def __eq__(self, other) -> bool:
        return isinstance(other, RegSet) and self.rank == other.rank and self.machine == other.machine

    def __hash__(self) -> int:
        return hash(self.machine)

    def __contains__(self, w: Word) -> bool:
        return bool(self.machine(w.codes))

    def __or__(self, other: "RegSet") -> "RegSet":
        return union(self, other)

    def __and__(self, other: "RegSet") -> "RegSet":
        return intersect(self, other)

    def __sub__(self, other: "RegSet") -> "RegSet":
        return difference(self, other)

    def __invert__(self) -> "RegSet":
        return complement(self)

    def __le__(self, other: "RegSet") -> bool:
        return is_subset(self, other)

    def __repr__(self) -> str:
        kind = classify(self)
        if kind[0] == "finite":
            return "RegSet{" + ", ".join(format_word(w) or "e" for w in kind[1]) + "}"
        return f"RegSet({kind[0]}, states={len(self.machine)})"

    @property
    def is_empty(self) -> bool:
        return self.machine == _empty_machine(2 * self.rank)

    def sort_key(self) -> tuple:
        return self.machine.sort_key()


def _wrap(m: Machine, rank: int) -> RegSet:
    return RegSet(m, rank)


@lru_cache(maxsize=None)
def _empty_machine(nl: int) -> Machine:
    return automata.constant(nl, False, False)


def empty(rank: int = DEFAULT_RANK) -> RegSet:
    return _wrap(_empty_machine(2 * rank), rank)


def universe(rank: int = DEFAULT_RANK) -> RegSet:
    return _wrap(automata.constant(2 * rank, True, False), rank)


def finite(words: Iterable[Word], rank: int | None = None) -> RegSet:
    words = list(words)
    if rank is None:
        rank = words[0].rank if words else DEFAULT_RANK
    # trie automaton
    nl = 2 * rank
    rows: list[list[int]] = [[-1] * nl]
    outs = [False]
    for w in words:
        q = 0
        for c in w.codes:
            if rows[q][c] == -1:
                rows[q][c] = len(rows)
                rows.append([-1] * nl)
                outs.append(False)
            q = rows[q][c]
        outs[q] = True
    sink = len(rows)
    rows.append([sink] * nl)
    outs.append(False)
    trans = [tuple(sink if t == -1 else t for t in r) for r in rows]
    return _wrap(automata.normalized(nl, trans, outs, False), rank)


def singleton(w: Word) -> RegSet:
    return finite([w], w.rank)


Run = tuple[int, int, bool]  # (letter code, minimum count, open-ended)


def from_runs(runs: Sequence[Run], rank: int = DEFAULT_RANK) -> RegSet:
    """Words with a prefix ``c1^k1 ... cr^kr`` where ``ki = mi`` (or ``>= mi`` if open).

    Consecutive runs must use different letters.  The final run only needs to
    be present as a prefix, so its open flag has no effect.
    """
    return _from_runs(tuple(runs), rank)


@lru_cache(maxsize=None)
def _from_runs(runs: tuple[Run, ...], rank: int) -> RegSet:
    nl = 2 * rank
    if not runs:
        return universe(rank)
    for (c, m, _), nxt in zip(runs, runs[1:] + ((None, 1, False),)):
        if m < 1 or not 0 <= c < nl:
            raise ValueError(f"bad run {(c, m)}")
        if nxt[0] == c:
            raise ValueError("consecutive runs must use different letters")
    # state (i, j): inside run i having read j copies; plus ACCEPT and DEAD
    ids: dict = {}
    for i, (c, m, _) in enumerate(runs):
        for j in range(m + 1):
            if i > 0 and j == 0:
                continue
            ids[(i, j)] = len(ids)
    accept = len(ids)
    dead = accept + 1
    rows = [None] * (dead + 1)
    last = len(runs) - 1
    for (i, j), q in ids.items():
        c, m, open_ = runs[i]
        row = []
        for x in range(nl):
            if i == last and j == m:
                row.append(accept)
            elif x == c and j < m:
                row.append(accept if (i == last and j + 1 == m) else ids[(i, j + 1)])
            elif x == c and j == m and open_:
                row.append(q)
            elif j == m and i < last and x == runs[i + 1][0]:
                nm = runs[i + 1][1]
                row.append(accept if (i + 1 == last and nm == 1) else ids[(i + 1, 1)])
            else:
                row.append(dead)
        rows[q] = tuple(row)
    rows[accept] = tuple(accept for _ in range(nl))
    rows[dead] = tuple(dead for _ in range(nl))
    outs = [False] * (dead + 1)
    outs[accept] = True
    return _wrap(automata.normalized(nl, rows, outs, False), rank)


def runs_of_word(w: Word) -> list[Run]:
    runs: list[list] = []
    for c in w.codes:
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
        else:
            runs.append([c, 1, False])
    return [tuple(r) for r in runs]


def cylinder(t: Word) -> RegSet:
    """All reduced words starting with ``t`` (``t`` must not be the identity)."""
    if t.is_identity:
        raise ValueError("cylinder of the identity is the universe; use universe()")
    return from_runs(runs_of_word(t), t.rank)


@dataclass(frozen=True)
class Pattern:
    """Union over k_i >= 1 of cylinders of ``head c1^k1 ... cm^km final``."""

    head: Word
    tail: tuple[int, ...]
    final: int

    def __post_init__(self):
        tail = tuple(self.tail)
        object.__setattr__(self, "tail", tail)
        if not tail:
            raise ValueError("pattern tail must be nonempty")
        nl = 2 * self.head.rank
        for c in tail + (self.final,):
            if not 0 <= c < nl:
                raise ValueError("letter outside alphabet")
        for c, d in zip(tail, tail[1:]):
            if d in (c, c ^ 1):
                raise ValueError("consecutive tail letters must differ and not cancel")
        if self.final in (tail[-1], tail[-1] ^ 1):
            raise ValueError("final letter must differ from the last tail letter and its inverse")
        if self.head.codes and self.head.codes[-1] == tail[0] ^ 1:
            raise ValueError("head must not end with the inverse of the first tail letter")

    @property
    def rank(self) -> int:
        return self.head.rank

    def runs(self) -> list[Run]:
        runs = [list(r) for r in runs_of_word(self.head)]
        for c in self.tail:
            if runs and runs[-1][0] == c:
                runs[-1][1] += 1
                runs[-1][2] = True
            else:
                runs.append([c, 1, True])
        runs.append([self.final, 1, False])
        return [tuple(r) for r in runs]

    def instance(self, exponents: Sequence[int]) -> Word:
        codes = list(self.head.codes)
        for c, k in zip(self.tail, exponents):
            codes += [c] * k
        codes.append(self.final)
        return Word(codes, self.rank)

    def __str__(self) -> str:
        from .freegroup import letter_char

        tail = "".join(letter_char(c) for c in self.tail)
        return f"(pat {format_word(self.head)!r} {tail!r} {letter_char(self.final)!r})".replace("'", '"')

    @classmethod
    def parse(cls, head: str, tail: str, final: str, rank: int = DEFAULT_RANK) -> "Pattern":
        t = parse_word(tail, rank).codes if tail else ()
        if len(t) != len(tail):
            raise ValueError("tail letters must not cancel")
        f = parse_word(final, rank).codes
        if len(f) != 1:
            raise ValueError("final must be a single letter")
        return cls(parse_word(head, rank), t, f[0])


def pattern_set(p: Pattern) -> RegSet:
    return from_runs(p.runs(), p.rank)


# ---------------------------------------------------------------------------
# boolean algebra


def _check(*sets: RegSet) -> int:
    rank = sets[0].rank
    if any(s.rank != rank for s in sets):
        raise ValueError("rank mismatch")
    return rank


@lru_cache(maxsize=65536)
def _binop(m1: Machine, m2: Machine, op: str) -> Machine:
    fn = {
        "or": lambda x, y: x or y,
        "and": lambda x, y: x and y,
        "sub": lambda x, y: x and not y,
        "xor": lambda x, y: x != y,
    }[op]
    return automata.product([m1, m2], fn, False)


def union(*sets: RegSet) -> RegSet:
    rank = _check(*sets)
    return _wrap(reduce(lambda a, b: _binop(a, b, "or"), (s.machine for s in sets)), rank)


def intersect(*sets: RegSet) -> RegSet:
    rank = _check(*sets)
    return _wrap(reduce(lambda a, b: _binop(a, b, "and"), (s.machine for s in sets)), rank)


def difference(a: RegSet, b: RegSet) -> RegSet:
    rank = _check(a, b)
    return _wrap(_binop(a.machine, b.machine, "sub"), rank)


def symmetric_difference(a: RegSet, b: RegSet) -> RegSet:
    rank = _check(a, b)
    return _wrap(_binop(a.machine, b.machine, "xor"), rank)


def complement(a: RegSet) -> RegSet:
    return difference(universe(a.rank), a)


def is_subset(a: RegSet, b: RegSet) -> bool:
    return difference(a, b).is_empty


# ---------------------------------------------------------------------------
# group action


def translate(g: Word, s: RegSet) -> RegSet:
    """``{g w : w in s}``."""
    if g.rank != s.rank:
        raise ValueError("rank mismatch")
    m = s.machine
    for c in reversed(g.codes):
        m = automata.translate_letter(m, c)
    return _wrap(m, s.rank)


# ---------------------------------------------------------------------------
# finiteness


def is_finite(s: RegSet) -> bool:
    return True not in automata.infinite_outputs(s.machine)


def classify(s: RegSet, limit: int = 100000):
    """``("empty", [])``, ``("finite", sorted words)`` or ``("infinite", None)``."""
    if s.is_empty:
        return ("empty", [])
    if not is_finite(s):
        return ("infinite", None)
    codes = automata.enumerate_accepted(s.machine, bool, limit)
    return ("finite", [Word._raw(c, s.rank) for c in codes])


def equals_mod_finite(a: RegSet, b: RegSet) -> bool:
    return is_finite(symmetric_difference(a, b))


def subset_mod_finite(a: RegSet, b: RegSet) -> bool:
    return is_finite(difference(a, b))


def members_up_to(s: RegSet, radius: int) -> set[Word]:
    from .freegroup import ball

    return {w for w in ball(radius, s.rank) if w in s}


def starting_with_letter(c: int, rank: int = DEFAULT_RANK) -> RegSet:
    return from_runs([(c, 1, False)], rank)


def length_at_least(k: int, rank: int = DEFAULT_RANK) -> RegSet:
    """Reduced words of length >= k (equals the union of the depth-k cylinders)."""
    nl = 2 * rank
    rows = [tuple(min(i + 1, k) for _ in range(nl)) for i in range(k + 1)]
    outs = [i >= k for i in range(k + 1)]
    return _wrap(automata.normalized(nl, rows, outs, False), rank)
