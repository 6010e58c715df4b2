"""The Pimsner-Voiculescu map and the K-group computations for both examples.

``sigma(h_1, ..., h_n) = sum_i (h_i - g_i.h_i)``.  K_1 is the kernel of sigma
on finite integer combinations of generators; K_0 is the cokernel.  The kernel
is computed exactly on truncated coordinate modules.  For the cokernel we emit
reduction certificates (an explicit sigma-preimage of ``input - canonical``)
plus independence verdicts up to a stated depth; the full cokernel is a
colimit and is never reported from one truncation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from . import funcalc, intlinalg, regset
from .freegroup import DEFAULT_RANK, Word, format_word, letter_char, sphere
from .funcalc import StepFunction
from .regset import Pattern
from .runwords import GenExpr, RunWord, is_generator_pattern

SCHEMA = "pvk-report/1"


# ---------------------------------------------------------------------------
# sigma


@dataclass(frozen=True)
class SigmaInput:
    components: tuple[StepFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for h in self.components:
            if not h.is_integer_valued():
                raise ValueError("sigma inputs must be integer valued")

    @property
    def rank(self) -> int:
        return len(self.components)


def generator(i: int, rank: int = DEFAULT_RANK) -> Word:
    return Word((2 * i,), rank)


def sigma(x: SigmaInput | Sequence[StepFunction]) -> StepFunction:
    comps = x.components if isinstance(x, SigmaInput) else tuple(x)
    rank = len(comps)
    out = funcalc.zero(rank)
    for i, h in enumerate(comps):
        out = out + (h - funcalc.translate(generator(i, rank), h))
    return out


def sigma_matrix(k: int, rank: int = DEFAULT_RANK) -> list[list[int]]:
    """sigma on depth-k cylinder coordinates, read off at depth k+1 (mod I).

    Column ``i * d_k + j`` is generator ``i`` applied to the j-th cylinder of
    length k; rows are the cylinders of length k+1 (shortlex order).
    """
    if k < 1:
        raise ValueError("depth must be >= 1")
    cols = sphere(k, rank)
    rows = sphere(k + 1, rank)
    col_index = {t: j for j, t in enumerate(cols)}
    dk = len(cols)
    M = [[0] * (rank * dk) for _ in rows]
    for r, u in enumerate(rows):
        for i in range(rank):
            v = ~generator(i, rank) * u
            M[r][i * dk + col_index[u[:k]]] += 1
            M[r][i * dk + col_index[v[:k]]] -= 1
    return M


def depth_vector(f: StepFunction, k: int) -> list[int]:
    vec = funcalc.coords_at_depth(f, k)
    if any(v.denominator != 1 for v in vec):
        raise ValueError("function is not integer valued")
    return [int(v) for v in vec]


def sigma_input_vector(x: Sequence[StepFunction], k: int) -> list[int]:
    out: list[int] = []
    for h in x:
        out += depth_vector(h, k)
    return out


# ---------------------------------------------------------------------------
# reports and certificates


def _gen_repr(x: Sequence[GenExpr]) -> list:
    return [e.to_dict() for e in x]


@dataclass
class ReductionCertificate:
    example: int
    input: StepFunction
    input_repr: str
    canonical: tuple[int, ...]
    witness_terms: tuple[GenExpr, ...]
    steps: list[str] = field(default_factory=list)

    @property
    def witness(self) -> SigmaInput:
        return SigmaInput(tuple(e.to_stepfunction() for e in self.witness_terms))

    def canonical_function(self) -> StepFunction:
        rank = self.input.rank
        if self.example == 1:
            n, m = self.canonical
            return funcalc.cylinder_combination({Word((0,), rank): n, Word((2,), rank): m}, rank)
        return funcalc.zero(rank)

    def verify(self) -> bool:
        """Replay: sigma(witness) == input - canonical modulo finite sets."""
        lhs = sigma(self.witness)
        return funcalc.equals_mod_I(lhs, self.input - self.canonical_function())

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "reduction",
            "example": self.example,
            "input": self.input_repr,
            "canonical": list(self.canonical),
            "witness": _gen_repr(self.witness_terms),
            "steps": list(self.steps),
        }


@dataclass
class KGroupReport:
    example: int
    which: str
    depth: int
    patterns: int | None = None
    kernel_rank: int | None = None
    generators: list = field(default_factory=list)
    claims: list[dict] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    invariant_factors: list[int] | None = None

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.claims)

    def claim(self, name: str, ok: bool, detail=None) -> bool:
        self.claims.append({"name": name, "ok": bool(ok), "detail": detail})
        return bool(ok)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "kgroup",
            "example": self.example,
            "which": self.which,
            "depth": self.depth,
            "patterns": self.patterns,
            "kernel_rank": self.kernel_rank,
            "generators": self.generators,
            "invariant_factors": self.invariant_factors,
            "claims": self.claims,
            "certificates": self.certificates,
            "verdict": "pass" if self.passed else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Example 1: K_1


def constant_kernel_vectors(k: int, rank: int = DEFAULT_RANK) -> list[list[int]]:
    dk = len(sphere(k, rank))
    out = []
    for i in range(rank):
        v = [0] * (rank * dk)
        v[i * dk:(i + 1) * dk] = [1] * dk
        out.append(v)
    return out


def k1_example1(k: int, replay: bool = True) -> KGroupReport:
    rep = KGroupReport(example=1, which="k1", depth=k)
    M = sigma_matrix(k)
    K = intlinalg.kernel_basis(M)
    rep.kernel_rank = len(K)
    rep.claim("matrix shape", (len(M), len(M[0])) == (len(sphere(k + 1)), 2 * len(sphere(k))),
              [len(M), len(M[0])])
    rep.claim("kernel rank is 2", len(K) == 2, len(K))
    consts = constant_kernel_vectors(k)
    rep.claim("kernel vectors satisfy M v = 0", all(not any(intlinalg.matvec(M, v)) for v in K))
    rep.claim("kernel lattice equals span of constants", intlinalg.lattices_equal(K, consts))
    rep.generators = ["(1, 0)", "(0, 1)"] if rep.passed else [str(v) for v in K]
    if replay and k <= 3:
        dk = len(sphere(k))
        ok = True
        for v in K:
            p = funcalc.from_depth_coords(v[:dk], k)
            q = funcalc.from_depth_coords(v[dk:], k)
            lhs = p + q
            rhs = funcalc.translate(Word((0,)), p) + funcalc.translate(Word((2,)), q)
            ok &= funcalc.equals_mod_I(lhs, rhs)
        rep.claim("kernel vectors replay p+q = a.p+b.q", ok)
    return rep


# ---------------------------------------------------------------------------
# letter moves shared by both reducers


def _move(witness: list[GenExpr], x: int, full: RunWord, rest: RunWord, coef: int) -> None:
    """Record ``coef * (1_full - 1_rest) = coef * (x.p - p)`` with ``p = 1_rest``."""
    i = x >> 1
    if x & 1 == 0:
        witness[i] = witness[i] - GenExpr.of(rest, coef)
    else:
        witness[i] = witness[i] + GenExpr.of(full, coef)


def _absorb(witness: list[GenExpr], d: int, target: RunWord, absorber: RunWord, coef: int) -> None:
    """Record ``coef * 1_target`` via ``d^-1 . 1_absorber = 1_absorber + 1_target``."""
    i = d >> 1
    if d & 1 == 0:
        witness[i] = witness[i] + GenExpr({absorber: coef, target: coef}, target.rank)
    else:
        witness[i] = witness[i] - GenExpr.of(absorber, coef)


# ---------------------------------------------------------------------------
# Example 1: K_0


def _canonical_depth(f: StepFunction) -> tuple[int, list[int]]:
    k = funcalc.depth_of(f)
    vec = depth_vector(f, k)
    if k == 0:
        vec = [vec[0]] * len(sphere(1, f.rank))
        k = 1
    return k, vec


def k0_reduce_example1(f: StepFunction, input_repr: str | None = None) -> ReductionCertificate:
    """Rewrite ``[f]`` as ``n[1_B(a)] + m[1_B(b)]`` plus an explicit image of sigma."""
    rank = f.rank
    if rank != 2:
        raise ValueError("Example 1 is over F_2")
    k, vec = _canonical_depth(f)
    witness = [GenExpr.zero(rank) for _ in range(rank)]
    steps: list[str] = []
    last_counts = {c: 0 for c in range(2 * rank)}
    for t, c in zip(sphere(k, rank), vec):
        if not c:
            continue
        w = t
        while len(w) > 1:
            full = RunWord.cylinder(w)
            rest = RunWord.cylinder(w[1:])
            _move(witness, w.codes[0], full, rest, c)
            w = w[1:]
        if len(t) > 1:
            steps.append(f"{c:+d}[B({format_word(t)})] -> [B({format_word(w)})]")
        last_counts[w.codes[0]] += c
    a, A, b, B = (last_counts[i] for i in range(4))
    if A:
        # sigma(0, -1_B(B)) = 1_B(a) + 1_B(A)
        witness[1] = witness[1] - GenExpr.of(RunWord.cylinder(Word((3,), rank)), A)
        steps.append(f"{A:+d}[B(A)] -> {-A:+d}[B(a)]")
    if B:
        # sigma(-1_B(A), 0) = 1_B(b) + 1_B(B)
        witness[0] = witness[0] - GenExpr.of(RunWord.cylinder(Word((1,), rank)), B)
        steps.append(f"{B:+d}[B(B)] -> {-B:+d}[B(b)]")
    cert = ReductionCertificate(
        example=1,
        input=f,
        input_repr=input_repr or describe(f),
        canonical=(a - A, b - B),
        witness_terms=tuple(witness),
        steps=steps,
    )
    return cert


def k0_independence_example1(k: int) -> KGroupReport:
    """im(sigma_k) meets the span of the two canonical classes only in 0."""
    rep = KGroupReport(example=1, which="k0", depth=k)
    M = sigma_matrix(k)
    rows = sphere(k + 1)
    ea = [int(u.codes[0] == 0) for u in rows]
    eb = [int(u.codes[0] == 2) for u in rows]
    inter = intlinalg.lattice_intersect(M, intlinalg.transpose([ea, eb]))
    rep.claim(f"independent up to depth {k}", not inter, [list(v) for v in inter])
    fs = intlinalg.cokernel_structure(M)
    rep.invariant_factors = fs[0]
    rep.claim("truncated cokernel free rank d_k + 2 (not K_0)", fs[1] == len(sphere(k)) + 2, fs[1])
    return rep


def k0_report_example1(depth: int) -> KGroupReport:
    rep = KGroupReport(example=1, which="k0", depth=depth)
    rep.generators = ["[1_B(a)]", "[1_B(b)]"]
    for k in range(1, depth + 1):
        sub = k0_independence_example1(k)
        rep.claims.extend(sub.claims[:1])
    for t in sphere(2):
        f = funcalc.indicator(regset.cylinder(t))
        cert = k0_reduce_example1(f, f'(ind (cyl "{format_word(t)}"))')
        rep.claim(f"reduce B({format_word(t)}) replays", cert.verify(), list(cert.canonical))
        rep.certificates.append(cert.to_dict())
    cert = k0_reduce_example1(funcalc.one(), "(one)")
    rep.claim("reduce 1 replays", cert.verify() and cert.canonical == (0, 0), list(cert.canonical))
    rep.certificates.append(cert.to_dict())
    return rep


# ---------------------------------------------------------------------------
# Example 2: K_0


def _absorber_letter(c: int, rank: int) -> int:
    # the other generator with the same sign: b for a, a for b, ...
    return (c + 2) % (2 * rank)


def _reduce_runword(w: RunWord, coef: int, witness: list[GenExpr], steps: list[str]) -> None:
    rank = w.rank
    if w.is_universe:
        # 1 = sum of the level-1 cylinders modulo the single point e
        steps.append(f"{coef:+d}[*] -> level-1 cylinders")
        for x in range(2 * rank):
            _reduce_runword(RunWord(((x, 1, False),), rank), coef, witness, steps)
        return
    start = w
    runs = list(w.runs)
    while True:
        c, k, o = runs[0]
        if k > 1:
            nxt = [(c, k - 1, o)] + runs[1:]
        elif not o and len(runs) > 1:
            nxt = runs[1:]
        else:
            break
        _move(witness, c, RunWord(tuple(runs), rank), RunWord(tuple(nxt), rank), coef)
        runs = nxt
    target = RunWord(tuple(runs), rank)
    d = _absorber_letter(runs[0][0], rank)
    absorber = RunWord(((d, 1, True),) + tuple(runs), rank)
    _absorb(witness, d, target, absorber, coef)
    moved = "" if target == start else f" -> [{target}]"
    steps.append(f"{coef:+d}[{start}]{moved} absorbed by [{absorber}] via {letter_char(d ^ 1)}")


def k0_reduce_example2(expr: GenExpr | StepFunction, input_repr: str | None = None) -> ReductionCertificate:
    """Reduce a B-expression to 0 in K_0 with an explicit sigma-preimage."""
    if isinstance(expr, StepFunction):
        f = expr
        k, vec = _canonical_depth(f)
        expr = GenExpr({RunWord.cylinder(t): c for t, c in zip(sphere(k, f.rank), vec) if c}, f.rank)
    else:
        f = expr.to_stepfunction()
    rank = expr.rank
    witness = [GenExpr.zero(rank) for _ in range(rank)]
    steps: list[str] = []
    for w, c in expr:
        _reduce_runword(w, c, witness, steps)
    return ReductionCertificate(
        example=2,
        input=f,
        input_repr=input_repr or str(expr),
        canonical=(),
        witness_terms=tuple(witness),
        steps=steps,
    )


def generator_patterns(max_head: int, max_tail: int, rank: int = DEFAULT_RANK) -> list[Pattern]:
    """All generating-family patterns with ``|head| <= max_head``, tail length ``<= max_tail``."""
    out = []
    for L in range(1, max_tail + 1):
        for first in range(2 * rank):
            sign = first & 1
            for second in range(2 * rank):
                if second & 1 != sign or second == first:
                    continue
                tail = tuple(first if i % 2 == 0 else second for i in range(L))
                final = second if L % 2 == 1 else first
                for j in range(max_head + 1):
                    for y in sphere(j, rank):
                        if y.codes and y.codes[-1] == first ^ 1:
                            continue
                        p = Pattern(y, tail, final)
                        if is_generator_pattern(p):
                            out.append(p)
    return out


def k0_report_example2(depth: int, max_tail: int = 2) -> KGroupReport:
    rep = KGroupReport(example=2, which="k0", depth=depth, patterns=max_tail)
    rep.generators = []
    items: list[tuple[str, GenExpr]] = []
    for j in range(1, depth + 1):
        for t in sphere(j):
            items.append((f'(cyl "{format_word(t)}")', GenExpr.of(RunWord.cylinder(t))))
    for p in generator_patterns(min(depth, 1), max_tail):
        items.append((str(p), GenExpr.of(RunWord.pattern(p))))
    items.append(("(one)", GenExpr.one()))
    ok_all = True
    for name, e in items:
        cert = k0_reduce_example2(e, name)
        ok = cert.verify()
        ok_all &= ok
        rep.certificates.append(cert.to_dict())
    rep.claim(f"{len(items)} generators reduce to 0 with replayed witnesses", ok_all, len(items))
    return rep


# ---------------------------------------------------------------------------
# descriptions


def describe(f: StepFunction) -> str:
    try:
        k = funcalc.depth_of(f, 6)
    except funcalc.NotCylinderFinitary:
        return repr(f)
    vec = funcalc.coords_at_depth(f, k)
    parts = [f"{v}*B({format_word(t) or 'e'})" for t, v in zip(sphere(k, f.rank), vec) if v]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Example 2: K_1


def _rw(spec: str, rank: int = DEFAULT_RANK) -> RunWord:
    """Run word from a compact spelling: ``"a+ b"`` is ``B(a^N b)``, ``"b"`` is ``B(b)``."""
    runs = []
    for tok in spec.split():
        opened = tok.endswith("+")
        tok = tok.rstrip("+")
        ch, count = tok[0], int(tok[1:] or 1)
        code = 2 * (ord(ch.lower()) - ord("a")) + (1 if ch.isupper() else 0)
        runs.append((code, count, opened))
    return RunWord(tuple(runs), rank)


def _gx(*specs: str, coef: int = 1) -> GenExpr:
    return GenExpr({_rw(s): coef for s in specs})


def r_expr() -> GenExpr:
    # B(b) u B(a^N b) u B(a^-1) minus B(a^-N b^-1); the union is disjoint
    return _gx("b", "a+ b", "A") - _gx("A+ B")


def r_prime_expr() -> GenExpr:
    return _gx("a", "b+ a", "B") - _gx("B+ A")


def r_function() -> StepFunction:
    return r_expr().to_stepfunction()


def r_prime_function() -> StepFunction:
    return r_prime_expr().to_stepfunction()


def example2_family(k: int, m: int) -> list[tuple[str, GenExpr]]:
    """Cylinders of length k and generating patterns with |head| <= k, tail <= m."""
    out = [(f'(cyl "{format_word(t)}")', GenExpr.of(RunWord.cylinder(t))) for t in sphere(k)]
    out += [(str(p), GenExpr.of(RunWord.pattern(p))) for p in generator_patterns(k, m)]
    return out


def k1_example2(k: int, m: int) -> KGroupReport:
    """Kernel of sigma on the span of the (k, m) family, in refinement coordinates."""
    if k < 1 or m < 1:
        raise ValueError("bounds must be positive")
    rep = KGroupReport(example=2, which="k1", depth=k, patterns=m)
    fam = [e.to_stepfunction() for _, e in example2_family(k, m)]
    a, b = Word((0,)), Word((2,))
    fa = [funcalc.translate(a, f) for f in fam]
    fb = [funcalc.translate(b, f) for f in fam]
    special = [funcalc.one(), r_function(), r_prime_function()]
    allf = fam + fa + fb + special
    vecs = funcalc.refinement_vectors(allf, mod_I=True)
    n = len(fam)
    X = [[int(v[i]) for v in vecs] for i in range(len(allf))]  # one row per function
    H, U = intlinalg.hnf(X[:n])
    r = sum(1 for row in H if any(row))
    basis, Ub = H[:r], U[:r]

    def image(rows: list[list[int]]) -> list[list[int]]:
        out = []
        for u in Ub:
            acc = [0] * len(vecs)
            for l, c in enumerate(u):
                if c:
                    acc = [x + c * y for x, y in zip(acc, rows[l])]
            out.append(acc)
        return out

    ta, tb = image(X[n:2 * n]), image(X[2 * n:3 * n])
    cols = [[x - y for x, y in zip(bv, av)] for bv, av in zip(basis, ta)]
    cols += [[x - y for x, y in zip(bv, bw)] for bv, bw in zip(basis, tb)]
    S = intlinalg.transpose(cols)
    K = intlinalg.kernel_basis(S, 2 * r)
    rep.kernel_rank = len(K)
    rep.claim("refinement blocks", True, len(vecs))
    rep.claim("module rank", True, r)
    Bt = intlinalg.transpose(basis)
    coords = []
    for name, y in zip(("1", "r", "r'"), intlinalg.solve_many(Bt, X[3 * n:])):
        if y is None:
            raise ValueError(f"{name} is not in the span of the family; enlarge bounds (k, m)")
        coords.append(y)
    z = [0] * r
    expected = [coords[0] + z, coords[1] + z, z + coords[0], z + coords[2]]
    rep.claim("kernel rank is 4", len(K) == 4, len(K))
    rep.claim("kernel lattice equals span{(1,0),(r,0),(0,1),(0,r')}", intlinalg.lattices_equal(K, expected))
    rep.generators = ["(1, 0)", "(r, 0)", "(0, 1)", "(0, r')"]
    return rep


def r_invariance() -> tuple[bool, bool]:
    a, b = Word((0,)), Word((2,))
    r, rp = r_function(), r_prime_function()
    return (funcalc.equals_mod_I(funcalc.translate(a, r), r),
            funcalc.equals_mod_I(funcalc.translate(b, rp), rp))


def kernel_pair_holds(n: int, m: int, k: int, l: int) -> bool:
    """``(n + m r, k + l r')`` satisfies ``p + q = a.p + b.q`` modulo finite sets."""
    p = n + m * r_function()
    q = k + l * r_prime_function()
    lhs = p + q
    rhs = funcalc.translate(Word((0,)), p) + funcalc.translate(Word((2,)), q)
    return funcalc.equals_mod_I(lhs, rhs)


# Unknowns of the kernel ansatz and the functions they multiply.
ANSATZ_P = {
    "d1": ("a", "b", "B"),
    "d2": ("A",),
    "a1": ("a+ b", "b"),
    "a2": ("a+ b+ a", "b+ a"),
    "b1": ("A+ B",),
    "b2": ("A+ B+ A",),
}
ANSATZ_Q = {
    "d1'": ("b", "a", "A"),
    "d2'": ("B",),
    "a1'": ("b+ a", "a"),
    "a2'": ("b+ a+ b", "a+ b"),
    "b1'": ("B+ A",),
    "b2'": ("B+ A+ B",),
}
TABLE_ROWS = ("a", "b", "A", "B", "a+ b", "b+ a", "A+ B", "B+ A",
              "a+ b+ a", "b+ a+ b", "A+ B+ A", "B+ A+ B")

# expected entries (p+q, a.p+b.q) for the first eight rows
REFERENCE_TABLE = {
    "a": ("d1+d1'+a1'", "d1+d2'"),
    "b": ("d1+a1+d1'", "d2+d1'"),
    "A": ("d2+d1'", "d2+d2'+b1'"),
    "B": ("d1+d2'", "d2+b1+d2'"),
    "a+ b": ("a1+a2'", "a1"),
    "b+ a": ("a2+a1'", "a1'"),
    "A+ B": ("b1", "b1+b2'"),
    "B+ A": ("b1'", "b1'+b2"),
}


def _linear_form(s: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for tok in s.split("+"):
        tok = tok.strip()
        if tok:
            out[tok] = out.get(tok, 0) + 1
    return out


def _format_form(form: dict[str, int]) -> str:
    order = list(ANSATZ_P) + list(ANSATZ_Q)
    parts = []
    for u in sorted(form, key=order.index):
        c = form[u]
        if c:
            parts.append(u if c == 1 else f"{c}*{u}")
    return "+".join(parts) or "0"


def coefficient_table() -> dict[str, tuple[dict[str, int], dict[str, int]]]:
    """Coefficients of the twelve row generators in p+q and a.p+b.q, per unknown.

    Each ansatz function and its translate is expanded exactly in the row
    generators (which are independent modulo finite sets), so every entry is a
    computed integer linear form in the unknowns.
    """
    a, b = Word((0,)), Word((2,))
    gens = [_rw(s).indicator() for s in TABLE_ROWS]
    terms = []  # (unknown, side, function)
    for u, specs in ANSATZ_P.items():
        f = _gx(*specs).to_stepfunction()
        terms += [(u, 0, f), (u, 1, funcalc.translate(a, f))]
    for u, specs in ANSATZ_Q.items():
        f = _gx(*specs).to_stepfunction()
        terms += [(u, 0, f), (u, 1, funcalc.translate(b, f))]
    allf = gens + [f for _, _, f in terms]
    vecs = funcalc.refinement_vectors(allf, mod_I=True)
    cols = [[int(v[i]) for v in vecs] for i in range(len(allf))]
    G = intlinalg.transpose(cols[:len(gens)])
    if intlinalg.rank(intlinalg.transpose(G)) != len(gens):
        raise AssertionError("row generators are not independent modulo finite sets")
    table = {row: ({}, {}) for row in TABLE_ROWS}
    for (u, side, _), col in zip(terms, cols[len(gens):]):
        c = intlinalg.solve(G, col)
        if c is None:
            raise AssertionError(f"ansatz term for {u} leaves the span of the row generators")
        for row, x in zip(TABLE_ROWS, c):
            if x:
                form = table[row][side]
                form[u] = form.get(u, 0) + x
    return table


def coefficient_table_check() -> tuple[bool, list[dict]]:
    table = coefficient_table()
    rows = []
    ok = True
    for row in TABLE_ROWS:
        lhs, rhs = table[row]
        entry = {"row": f"B({row})", "p+q": _format_form(lhs), "a.p+b.q": _format_form(rhs)}
        if row in REFERENCE_TABLE:
            exp_l, exp_r = REFERENCE_TABLE[row]
            match = lhs == _linear_form(exp_l) and rhs == _linear_form(exp_r)
            entry["expected"] = [exp_l, exp_r]
            entry["match"] = match
            ok &= match
        rows.append(entry)
    return ok, rows
