"""Step functions on F_n with finitely many values and regular level sets.

A :class:`StepFunction` is a canonical Moore machine with rational outputs, so
two step functions are equal iff their machines are equal.  Comparisons modulo
the ideal of finitely supported functions ("mod I") are predicates, never a
quotient type: values are always stored exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational
from typing import Iterable, Sequence

from . import automata
from .automata import Machine
from .freegroup import DEFAULT_RANK, Word, sphere
from .regset import RegSet, cylinder, universe

ZERO = Fraction(0)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"step function values must be rational, got {type(v).__name__}")


class StepFunction:
    __slots__ = ("machine", "rank")

    def __init__(self, machine: Machine, rank: int):
        self.machine = machine
        self.rank = rank

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return add(self, _lift(other, self.rank))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other, self.rank))

    def __rsub__(self, other):
        return sub(_lift(other, self.rank), self)

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return mul(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def __neg__(self):
        return scale(-1, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            try:
                other = _lift(other, self.rank)
            except TypeError:
                return NotImplemented
        return self.rank == other.rank and self.machine == other.machine

    def __hash__(self) -> int:
        return hash(self.machine)

    def __call__(self, w: Word) -> Fraction:
        return self.machine(w.codes)

    def __repr__(self) -> str:
        vals = ", ".join(f"{v}" for v, _ in self.pieces)
        return f"StepFunction(values=[{vals}], states={len(self.machine)})"

    # -- structure --------------------------------------------------------
    @property
    def pieces(self) -> list[tuple[Fraction, RegSet]]:
        """Nonzero values with their level sets, ordered by value."""
        return _pieces(self.machine, self.rank)

    def support(self) -> RegSet:
        return RegSet(automata.mapped(self.machine, lambda v: v != 0, False), self.rank)

    def level_set(self, value) -> RegSet:
        value = _frac(value)
        m = self.machine
        # renormalize: the value 0 is also what non-reduced input reads
        return RegSet(automata.normalized(m.nletters, m.trans, tuple(v == value for v in m.out), False), self.rank)

    def values(self) -> frozenset:
        return automata.occurring_outputs(self.machine)

    def is_integer_valued(self) -> bool:
        return all(v.denominator == 1 for v in self.values())


@lru_cache(maxsize=4096)
def _pieces(m: Machine, rank: int):
    out = []
    for v in sorted(automata.occurring_outputs(m)):
        if v != 0:
            out.append((v, RegSet(automata.mapped(m, lambda x, v=v: x == v, False), rank)))
    return out


def _lift(x, rank: int) -> StepFunction:
    if isinstance(x, StepFunction):
        return x
    return constant(x, rank)


def _wrap(m: Machine, rank: int) -> StepFunction:
    return StepFunction(m, rank)


# ---------------------------------------------------------------------------
# constructors


def constant(c, rank: int = DEFAULT_RANK) -> StepFunction:
    return _wrap(automata.constant(2 * rank, _frac(c), ZERO), rank)


def zero(rank: int = DEFAULT_RANK) -> StepFunction:
    return constant(0, rank)


def one(rank: int = DEFAULT_RANK) -> StepFunction:
    return constant(1, rank)


def indicator(s: RegSet) -> StepFunction:
    one_ = Fraction(1)
    return _wrap(automata.mapped(s.machine, lambda b: one_ if b else ZERO, ZERO), s.rank)


def combination(terms: Iterable[tuple[object, RegSet]], rank: int = DEFAULT_RANK) -> StepFunction:
    """``sum c_i 1_{S_i}`` computed in a single product."""
    terms = [(_frac(c), s) for c, s in terms if c != 0]
    if not terms:
        return zero(rank)
    coefs = [c for c, _ in terms]

    def combine(*bits):
        return sum((c for c, b in zip(coefs, bits) if b), ZERO)

    return _wrap(automata.product([s.machine for _, s in terms], combine, ZERO), terms[0][1].rank)


def cylinder_combination(coefs: dict[Word, object], rank: int = DEFAULT_RANK) -> StepFunction:
    """``sum c_t 1_{B(t)}``; the identity word stands for the universe."""
    return combination(
        ((c, universe(rank) if t.is_identity else cylinder(t)) for t, c in coefs.items()), rank
    )


# ---------------------------------------------------------------------------
# pointwise operations


@lru_cache(maxsize=65536)
def _binop(m1: Machine, m2: Machine, op: str) -> Machine:
    fn = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
    }[op]
    return automata.product([m1, m2], fn, ZERO)


def _same_rank(f: StepFunction, g: StepFunction) -> int:
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    return f.rank


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    return _wrap(_binop(f.machine, g.machine, "add"), _same_rank(f, g))


def sub(f: StepFunction, g: StepFunction) -> StepFunction:
    return _wrap(_binop(f.machine, g.machine, "sub"), _same_rank(f, g))


def mul(f: StepFunction, g: StepFunction) -> StepFunction:
    return _wrap(_binop(f.machine, g.machine, "mul"), _same_rank(f, g))


pointwise_mul = mul


def scale(c, f: StepFunction) -> StepFunction:
    c = _frac(c)
    return _wrap(automata.mapped(f.machine, lambda v: c * v, ZERO), f.rank)


def total(fs: Iterable[StepFunction], rank: int = DEFAULT_RANK) -> StepFunction:
    fs = list(fs)
    if not fs:
        return zero(rank)
    return _wrap(automata.product([f.machine for f in fs], lambda *xs: sum(xs, ZERO), ZERO), fs[0].rank)


def translate(g: Word, f: StepFunction) -> StepFunction:
    """``(g.f)(x) = f(g^-1 x)``."""
    if g.rank != f.rank:
        raise ValueError("rank mismatch")
    m = f.machine
    for c in reversed(g.codes):
        m = automata.translate_letter(m, c)
    return _wrap(m, f.rank)


# ---------------------------------------------------------------------------
# predicates


def is_projection(f: StepFunction) -> bool:
    return f.values() <= {0, 1}


def infinite_values(f: StepFunction) -> frozenset:
    """Values taken on infinite sets of words."""
    return automata.infinite_outputs(f.machine)


def is_zero_mod_I(f: StepFunction) -> bool:
    return infinite_values(f) <= {0}


def equals_mod_I(f: StepFunction, g: StepFunction) -> bool:
    return is_zero_mod_I(sub(f, g))


def leq_mod_I(f: StepFunction, g: StepFunction) -> bool:
    return all(v >= 0 for v in infinite_values(sub(g, f)))


def sup_norm(f: StepFunction, mod_I: bool = False) -> Fraction:
    vals = infinite_values(f) if mod_I else f.values()
    return max((abs(v) for v in vals), default=ZERO)


# ---------------------------------------------------------------------------
# refinement


@dataclass(frozen=True)
class Refinement:
    blocks: list[RegSet]
    coords: list[list[int]]  # coords[i][j] = value of fs[i] on blocks[j]
    mod_I: bool

    def reassemble(self, i: int) -> StepFunction:
        rank = self.blocks[0].rank if self.blocks else DEFAULT_RANK
        return combination(zip(self.coords[i], self.blocks), rank)


def joint_machine(fs: Sequence[StepFunction]) -> Machine:
    """Product machine whose output is the tuple of values of ``fs``."""
    ms = [f.machine for f in fs]
    if all(f.is_integer_valued() for f in fs):
        # int outputs hash far faster than Fractions in the product search
        ms = [automata.mapped(m, int, 0) for m in ms]
    return automata.product(ms, lambda *xs: xs, None)


def refinement_vectors(fs: Sequence[StepFunction], mod_I: bool = True) -> list[tuple]:
    """Distinct nonzero value vectors of ``fs`` (only those on infinite sets if mod_I)."""
    if not fs:
        return []
    m = joint_machine(fs)
    vecs = automata.infinite_outputs(m) if mod_I else automata.occurring_outputs(m)
    return sorted((v for v in vecs if any(x != 0 for x in v)), reverse=True)


def common_refinement(fs: Sequence[StepFunction], mod_I: bool = False) -> Refinement:
    """Pairwise disjoint regular blocks on which every ``fs[i]`` is constant.

    With ``mod_I`` the blocks on which all functions vanish off a finite set are
    dropped, and so are finite blocks.
    """
    fs = list(fs)
    for f in fs:
        if not f.is_integer_valued():
            raise ValueError("common_refinement needs integer-valued functions")
    if not fs:
        return Refinement([], [], mod_I)
    m = joint_machine(fs)
    vecs = refinement_vectors(fs, mod_I)
    rank = fs[0].rank
    blocks = [RegSet(automata.mapped(m, lambda o, v=v: o == v, False), rank) for v in vecs]
    coords = [[int(v[i]) for v in vecs] for i in range(len(fs))]
    return Refinement(blocks, coords, mod_I)


# ---------------------------------------------------------------------------
# depth coordinates


class NotCylinderFinitary(ValueError):
    pass


def coords_at_depth(f: StepFunction, k: int) -> list[Fraction]:
    """Eventual value of ``f`` on each cylinder ``B(t)``, ``|t| = k`` (shortlex order)."""
    g = automata.reduced_graph(f.machine)
    out = []
    for t in sphere(k, f.rank):
        node = g.node_after(t.codes)
        vals = g.infinite[node]
        if len(vals) != 1:
            raise NotCylinderFinitary(f"not cylinder-finitary at depth {k} (on B({t}))")
        out.append(next(iter(vals)))
    return out


def is_depth_representable(f: StepFunction, k: int) -> bool:
    try:
        coords_at_depth(f, k)
    except NotCylinderFinitary:
        return False
    return True


def depth_of(f: StepFunction, max_depth: int = 10) -> int:
    for k in range(max_depth + 1):
        if is_depth_representable(f, k):
            return k
    raise NotCylinderFinitary(f"not cylinder-finitary up to depth {max_depth}")


def from_depth_coords(vec: Sequence, k: int, rank: int = DEFAULT_RANK) -> StepFunction:
    ws = sphere(k, rank)
    if len(vec) != len(ws):
        raise ValueError("vector length does not match sphere size")
    return cylinder_combination({w: v for w, v in zip(ws, vec) if v != 0}, rank)


def expand_depth(vec: Sequence, k: int, rank: int = DEFAULT_RANK) -> list:
    """Depth-k coordinates to depth-(k+1): each cylinder splits into its children."""
    ws = sphere(k, rank)
    val = dict(zip(ws, vec))
    out = []
    for u in sphere(k + 1, rank):
        out.append(val[u[:k]])
    return out
