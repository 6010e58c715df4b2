"""Complete deterministic Moore machines over a free-group alphabet.

A machine reads a string of letter codes and emits the output of the state it
ends in.  Regular sets are machines with boolean outputs, step functions are
machines with rational outputs.  Every machine handed out by this module is

* normalized: strings that are not reduced words produce the zero output, and
* canonical: minimal, with states numbered in breadth-first order from the
  start state (letters visited in code order).

Two canonical machines over the same alphabet compute the same function on
reduced words iff they are structurally equal.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Callable, Hashable, Sequence

Trans = tuple[tuple[int, ...], ...]


class Machine:
    __slots__ = ("nletters", "trans", "out", "zero", "_hash")

    def __init__(self, nletters: int, trans: Trans, out: tuple, zero):
        self.nletters = nletters
        self.trans = trans
        self.out = out
        self.zero = zero
        self._hash = hash((nletters, trans, out))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Machine)
            and self._hash == other._hash
            and self.nletters == other.nletters
            and self.trans == other.trans
            and self.out == other.out
        )

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.trans)

    def __repr__(self) -> str:
        return f"Machine(states={len(self.trans)}, outputs={sorted(set(map(repr, self.out)))})"

    def run(self, codes: Sequence[int], state: int = 0) -> int:
        t = self.trans
        for c in codes:
            state = t[state][c]
        return state

    def __call__(self, codes: Sequence[int]):
        return self.out[self.run(codes)]

    def sort_key(self) -> tuple:
        return (len(self.trans), self.trans, tuple(map(repr, self.out)))


# ---------------------------------------------------------------------------
# canonical form


def _reachable(trans: Sequence[Sequence[int]], start: int) -> list[int]:
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        for nxt in trans[order[i]]:
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
        i += 1
    return order


def canonical(nletters: int, trans, out, zero, start: int = 0) -> Machine:
    """Minimize (Moore refinement) and renumber breadth-first from ``start``."""
    states = _reachable(trans, start)
    index = {q: i for i, q in enumerate(states)}
    t = [tuple(index[trans[q][c]] for c in range(nletters)) for q in states]
    o = [out[q] for q in states]

    ids: dict = {}
    cls = [ids.setdefault(v, len(ids)) for v in o]
    count = len(ids)
    while True:
        sig: dict = {}
        new = [sig.setdefault((cls[q], tuple(cls[r] for r in t[q])), len(sig)) for q in range(len(t))]
        if len(sig) == count:
            break
        cls, count = new, len(sig)

    # breadth-first renumbering of classes
    rep: dict[int, int] = {}
    for q in range(len(t)):
        rep.setdefault(cls[q], q)
    order = [cls[0]]
    number = {cls[0]: 0}
    i = 0
    while i < len(order):
        q = rep[order[i]]
        for c in range(nletters):
            k = cls[t[q][c]]
            if k not in number:
                number[k] = len(order)
                order.append(k)
        i += 1
    new_trans = tuple(tuple(number[cls[t[rep[k]][c]]] for c in range(nletters)) for k in order)
    new_out = tuple(o[rep[k]] for k in order)
    return Machine(nletters, new_trans, new_out, zero)


# ---------------------------------------------------------------------------
# reduced-word tracker


@lru_cache(maxsize=None)
def tracker(nletters: int) -> Trans:
    """States: 0 = empty word, 1 + c = last letter c, nletters + 1 = dead."""
    dead = nletters + 1
    rows = [tuple(1 + c for c in range(nletters))]
    for last in range(nletters):
        rows.append(tuple(dead if c == last ^ 1 else 1 + c for c in range(nletters)))
    rows.append(tuple(dead for _ in range(nletters)))
    return tuple(rows)


def normalized(nletters: int, trans, out, zero, start: int = 0) -> Machine:
    """Force the zero output on non-reduced strings, then canonicalize."""
    tr = tracker(nletters)
    dead = nletters + 1
    index = {(start, 0): 0}
    pairs = [(start, 0)]
    rows: list[tuple[int, ...]] = []
    outs = []
    i = 0
    while i < len(pairs):
        q, u = pairs[i]
        outs.append(zero if u == dead else out[q])
        row = []
        for c in range(nletters):
            nxt = (trans[q][c], tr[u][c])
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(pairs)
                pairs.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    return canonical(nletters, rows, outs, zero)


def constant(nletters: int, value, zero) -> Machine:
    return normalized(nletters, [tuple(0 for _ in range(nletters))], [value], zero)


# ---------------------------------------------------------------------------
# products


def product(machines: Sequence[Machine], combine: Callable, zero) -> Machine:
    """Synchronous product; output ``combine(*outputs)``."""
    if not machines:
        raise ValueError("empty product")
    nl = machines[0].nletters
    if any(m.nletters != nl for m in machines):
        raise ValueError("alphabet mismatch")
    ts = [m.trans for m in machines]
    os_ = [m.out for m in machines]
    start = tuple(0 for _ in machines)
    index = {start: 0}
    tuples = [start]
    rows = []
    outs = []
    i = 0
    while i < len(tuples):
        cur = tuples[i]
        outs.append(combine(*(o[q] for o, q in zip(os_, cur))))
        row = []
        for c in range(nl):
            nxt = tuple(t[q][c] for t, q in zip(ts, cur))
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(tuples)
                tuples.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    return canonical(nl, rows, outs, zero)


def mapped(m: Machine, fn: Callable, zero) -> Machine:
    return canonical(m.nletters, m.trans, tuple(fn(v) for v in m.out), zero)


def restarted(m: Machine, codes: Sequence[int]) -> Machine:
    """The machine for ``w -> m(codes + w)`` (still zero on non-reduced input)."""
    q = m.run(codes)
    if codes:
        tr = tracker(m.nletters)
        u = 0
        for c in codes:
            u = tr[u][c]
        if u == m.nletters + 1:
            return constant(m.nletters, m.zero, m.zero)
        # continuations must not cancel the last letter of ``codes``
        last = codes[-1]
        rows = [tuple(m.trans[p]) for p in range(len(m))]
        dead = len(rows)
        rows.append(tuple(dead for _ in range(m.nletters)))
        start = dead + 1
        rows.append(tuple(dead if c == last ^ 1 else m.trans[q][c] for c in range(m.nletters)))
        outs = list(m.out) + [m.zero, m.out[q]]
        return normalized(m.nletters, rows, outs, m.zero, start)
    return m


@lru_cache(maxsize=65536)
def translate_letter(m: Machine, x: int) -> Machine:
    """The machine for ``w -> m(x^-1 w)`` (left translation by the letter x)."""
    nl = m.nletters
    xi = x ^ 1
    base = m.trans[0][xi]
    rows = [tuple(r) for r in m.trans]
    start = len(rows)
    rows.append(tuple(0 if c == x else m.trans[base][c] for c in range(nl)))
    outs = list(m.out) + [m.out[base]]
    return normalized(nl, rows, outs, m.zero, start)


# ---------------------------------------------------------------------------
# eventual behaviour on reduced words


def _tarjan(nodes: int, succ: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns component id per node (reverse topological ids)."""
    index = [-1] * nodes
    low = [0] * nodes
    onstack = [False] * nodes
    comp = [-1] * nodes
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


class ReducedGraph:
    """Product of a machine with the reduced-word tracker, restricted to live pairs.

    ``infinite[node]`` is the set of outputs produced by infinitely many reduced
    words that pass through ``node``'s prefix.
    """

    def __init__(self, m: Machine):
        nl = m.nletters
        tr = tracker(nl)
        dead = nl + 1
        index = {(0, 0): 0}
        pairs = [(0, 0)]
        succ: list[list[int]] = []
        edges: list[dict[int, int]] = []
        i = 0
        while i < len(pairs):
            q, u = pairs[i]
            s, e = [], {}
            for c in range(nl):
                v = tr[u][c]
                if v == dead:
                    continue
                nxt = (m.trans[q][c], v)
                j = index.get(nxt)
                if j is None:
                    j = index[nxt] = len(pairs)
                    pairs.append(nxt)
                s.append(j)
                e[c] = j
            succ.append(s)
            edges.append(e)
            i += 1
        self.machine = m
        self.pairs = pairs
        self.index = index
        self.edges = edges
        n = len(pairs)
        comp = _tarjan(n, succ)
        ncomp = max(comp) + 1 if comp else 0
        members: list[list[int]] = [[] for _ in range(ncomp)]
        for v in range(n):
            members[comp[v]].append(v)
        cyclic = [False] * ncomp
        for v in range(n):
            for w in succ[v]:
                if comp[w] == comp[v]:
                    cyclic[comp[v]] = True
        # tarjan numbers components in reverse topological order: successors first
        reach_out: list[frozenset] = [frozenset()] * ncomp
        inf: list[frozenset] = [frozenset()] * ncomp
        for k in range(ncomp):
            outs = {m.out[pairs[v][0]] for v in members[k]}
            r = set(outs)
            f: set = set()
            for v in members[k]:
                for w in succ[v]:
                    if comp[w] != k:
                        r |= reach_out[comp[w]]
                        f |= inf[comp[w]]
            reach_out[k] = frozenset(r)
            inf[k] = frozenset(r) if cyclic[k] else frozenset(f)
        self.infinite = [inf[comp[v]] for v in range(n)]
        self.reachable_outputs = [reach_out[comp[v]] for v in range(n)]

    def node_after(self, codes: Sequence[int]) -> int | None:
        v = 0
        for c in codes:
            v = self.edges[v].get(c)
            if v is None:
                return None
        return v


@lru_cache(maxsize=4096)
def reduced_graph(m: Machine) -> ReducedGraph:
    return ReducedGraph(m)


def infinite_outputs(m: Machine) -> frozenset:
    return reduced_graph(m).infinite[0]


def occurring_outputs(m: Machine) -> frozenset:
    return reduced_graph(m).reachable_outputs[0]


def enumerate_accepted(m: Machine, predicate: Callable[[Hashable], bool], limit: int | None = None):
    """Reduced words whose output satisfies ``predicate``; the set must be finite."""
    g = reduced_graph(m)
    found: list[tuple[int, ...]] = []
    live = [any(predicate(o) for o in g.reachable_outputs[v]) for v in range(len(g.pairs))]
    stack = [(0, ())]
    while stack:
        v, w = stack.pop()
        if not live[v]:
            continue
        if predicate(m.out[g.pairs[v][0]]):
            found.append(w)
            if limit is not None and len(found) > limit:
                raise ValueError("set is larger than the enumeration limit")
        for c, nxt in sorted(g.edges[v].items(), reverse=True):
            stack.append((nxt, w + (c,)))
    found.sort(key=lambda w: (len(w), w))
    return found
