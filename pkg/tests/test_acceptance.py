"""Acceptance criteria 1-8, exact arithmetic throughout.

Each test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (visible without ``-s``) and then asserts.
"""
import itertools
import random
import time

import pytest

from pvk import dynamics, funcalc, intlinalg, ktheory, paradox, regset, xprod
from pvk.freegroup import Word, ball, sphere
from pvk.regset import Pattern
from pvk.runwords import GenExpr, RunWord
from pvk.suites import obstruction_fixtures

from strategies import in_pattern, starts_with


@pytest.fixture
def report(capsys):
    def emit(n: int, what: str, failures: list) -> None:
        line = f"{'PASS' if not failures else 'FAIL'} criterion {n}: {what}"
        if failures:
            line += "  <- " + "; ".join(map(str, failures[:5]))
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line

    return emit


def test_criterion_1_k1_example1(report):
    bad = []
    t0 = time.perf_counter()
    for k in range(1, 6):
        rep = ktheory.k1_example1(k, replay=k <= 3)
        if not rep.passed or rep.kernel_rank != 2:
            bad.append(f"k={k}: rank {rep.kernel_rank}")
    dt = time.perf_counter() - t0
    if dt >= 30:
        bad.append(f"runtime {dt:.1f}s")
    report(1, f"ker sigma_k has rank 2 spanned by constants, k=1..5 ({dt:.1f}s)", bad)


def test_criterion_2_k0_example1(report):
    bad = []
    for t in sphere(2):
        c = ktheory.k0_reduce_example1(funcalc.indicator(regset.cylinder(t)))
        if not c.verify():
            bad.append(f"B({t})")
    rng = random.Random(2024)
    words = [w for k in (1, 2, 3) for w in sphere(k)]
    for i in range(100):
        coefs = {w: rng.randint(-5, 5) for w in rng.sample(words, rng.randint(1, 6))}
        c = ktheory.k0_reduce_example1(funcalc.cylinder_combination(coefs))
        if not c.verify():
            bad.append(f"random case {i}")
    for k in range(1, 5):
        if not ktheory.k0_independence_example1(k).claims[0]["ok"]:
            bad.append(f"independence k={k}")
    report(2, "12 depth-2 and 100 random reductions replay; independence k=1..4", bad)


def test_criterion_3_k0_example2(report):
    gens = [GenExpr.of(RunWord.cylinder(t)) for t in sphere(1)]
    gens += [GenExpr.of(RunWord.pattern(p)) for p in ktheory.generator_patterns(1, 2)]
    bad = []
    for e in gens:
        c = ktheory.k0_reduce_example2(e)
        if c.canonical != () or not c.verify():
            bad.append(str(e))
    report(3, f"{len(gens)} generators (level-1 cylinders, patterns |head|<=1, tail<=2) reduce to 0", bad)


def test_criterion_4_k1_example2(report):
    bad = []
    if ktheory.r_invariance() != (True, True):
        bad.append("a.r = r or b.r' = r' fails")
    rng = random.Random(16)
    for _ in range(50):
        q = tuple(rng.randint(-5, 5) for _ in range(4))
        if not ktheory.kernel_pair_holds(*q):
            bad.append(f"kernel pair {q}")
    for k, m in ((2, 2), (3, 2)):
        rep = ktheory.k1_example2(k, m)
        if not rep.passed or rep.kernel_rank != 4:
            bad.append(f"(k,m)=({k},{m}): rank {rep.kernel_rank}")
    ok, rows = ktheory.coefficient_table_check()
    if not ok:
        bad.append("coefficient table")
    report(4, "r, r' invariant; 50 kernel pairs; rank 4 at (2,2),(3,2); coefficient table", bad)


def test_criterion_5_amenability(report):
    t0 = time.perf_counter()
    rep = dynamics.amenability_suite(32, rec_max=16)
    dt = time.perf_counter() - t0
    bad = [name for name, ok in rep.checks if not ok]
    if dt >= 60:
        bad.append(f"runtime {dt:.1f}s")
    report(5, f"i<=32, |s|<=min(i,4): norms, recursion n<=16, bound 2|s|/i "
              f"({rep.extra['pairs']} pairs, worst slack {rep.extra['worst_slack']}, {dt:.1f}s)", bad)


def test_criterion_6_paradox(report):
    bad = []
    cert = paradox.standard_cert()
    v = paradox.verify_cert(cert)
    if cert.strength != paradox.STRONG or not v:
        bad.append(f"standard cert: {v.failures}")
    iso = paradox.cert_to_isometries(cert)
    bad += [n for n, ok in iso.checks().items() if not ok]
    one = xprod.CcElement.function(funcalc.one())
    if not (iso.v * iso.v.adjoint() == one == iso.w * iso.w.adjoint()
            and iso.v.adjoint() * iso.v + iso.w.adjoint() * iso.w == one):
        bad.append("isometry identities (direct)")
    for t in ball(3):
        if not t.is_identity and not paradox.verify_cert(paradox.cylinder_cert(t)):
            bad.append(f"cylinder cert {t}")
    bad += [n for n, ok in paradox.three_coloring().checks().items() if not ok]
    report(6, "strong standard cert, p = vv* = ww* = v*v + w*w, weak cylinder certs |t|<=3, 3-colouring", bad)


def test_criterion_7_witnesses(report):
    bad = []
    words3 = [w for w in ball(3) if not w.is_identity]
    for s, t in itertools.product(words3, words3):
        if not dynamics.topfree_witness(s, t).passed:
            bad.append(f"topfree {s},{t}")
    for r in ball(4):
        if not r.is_identity and not dynamics.minimality_witness(r).passed:
            bad.append(f"minimality {r}")
    fixtures = obstruction_fixtures()
    for name, p, obs in fixtures:
        if not paradox.infiniteness_witness(p, obs).verify():
            bad.append(name)
    report(7, f"topfree {len(words3) ** 2} pairs, minimality |r|<=4, {len(fixtures)} obstruction fixtures", bad)


# -- criterion 8 helpers -------------------------------------------------------


def _random_word(rng, max_len, min_len=0):
    while True:
        w = Word([rng.randrange(4) for _ in range(rng.randint(min_len, max_len))])
        if len(w) >= min_len:
            return w


def _random_pattern(rng):
    tail = [rng.randrange(4)]
    for _ in range(rng.randint(0, 2)):
        tail.append(rng.choice([c for c in range(4) if c not in (tail[-1], tail[-1] ^ 1)]))
    final = rng.choice([c for c in range(4) if c not in (tail[-1], tail[-1] ^ 1)])
    head = _random_word(rng, 2)
    while head.codes and head.codes[-1] == tail[0] ^ 1:
        head = head[:-1]
    return Pattern(head, tuple(tail), final)


def _random_set(rng, depth):
    kind = rng.choice(["cyl", "pat", "fin"] + (["or", "and", "minus", "not", "tr"] if depth else []))
    if kind == "cyl":
        t = _random_word(rng, 3, 1)
        return regset.cylinder(t), lambda x: starts_with(x, t)
    if kind == "pat":
        p = _random_pattern(rng)
        return regset.pattern_set(p), lambda x: in_pattern(x, p.head, p.tail, p.final)
    if kind == "fin":
        ws = frozenset(_random_word(rng, 3) for _ in range(rng.randint(0, 3)))
        return regset.finite(ws), lambda x: x in ws
    if kind == "not":
        s, f = _random_set(rng, depth - 1)
        return ~s, lambda x: not f(x)
    if kind == "tr":
        g = _random_word(rng, 2)
        s, f = _random_set(rng, depth - 1)
        return regset.translate(g, s), lambda x: f(~g * x)
    (s1, f1), (s2, f2) = _random_set(rng, depth - 1), _random_set(rng, depth - 1)
    if kind == "or":
        return s1 | s2, lambda x: f1(x) or f2(x)
    if kind == "and":
        return s1 & s2, lambda x: f1(x) and f2(x)
    return s1 - s2, lambda x: f1(x) and not f2(x)


def _brute_pattern(p, K, ball_k):
    """Union over exponent vectors of the cylinders B(h c1^k1 ... cm^km f), cut at radius K."""
    out = set()
    for ks in itertools.product(range(1, K + 1), repeat=len(p.tail)):
        stem = p.instance(ks)
        if len(stem) <= K:
            out |= {x for x in ball_k if starts_with(x, stem)}
    return out


def test_criterion_8_infrastructure(report):
    bad = []
    rng = random.Random(8)
    B3 = ball(3)
    for i in range(1000):
        (a, fa), (b, fb), (c, _) = (_random_set(rng, 2) for _ in range(3))
        g, h = _random_word(rng, 2), _random_word(rng, 2)
        laws = [
            all((x in a) == fa(x) for x in B3),
            ~(a | b) == ~a & ~b,
            a & (b | c) == (a & b) | (a & c),
            ~~a == a,
            regset.translate(g, regset.translate(h, a)) == regset.translate(g * h, a),
            regset.translate(g, a - b) == regset.translate(g, a) - regset.translate(g, b),
        ]
        if not all(laws):
            bad.append(f"set laws case {i}")
    mrng = random.Random(80)
    for m, n in ((5, 7), (12, 9), (20, 30), (50, 80)):
        M = [[mrng.randint(-9, 9) if mrng.random() < 0.3 else 0 for _ in range(n)] for _ in range(m)]
        H, U = intlinalg.hnf(M)
        if intlinalg.matmul(U, M) != H or not intlinalg.is_unimodular(U):
            bad.append(f"hnf {m}x{n}")
        if not intlinalg.snf(M).verify(M):
            bad.append(f"snf {m}x{n}")
    frng = random.Random(81)
    for i in range(20):
        fs = [funcalc.combination([(frng.randint(-3, 3), _random_set(frng, 1)[0]) for _ in range(2)])
              for _ in range(5)]
        R = funcalc.common_refinement(fs)
        if any(R.reassemble(j) != f for j, f in enumerate(fs)):
            bad.append(f"refinement case {i}")
    for k in range(1, 5):
        dk = len(sphere(k))
        M = ktheory.sigma_matrix(k)
        for _ in range(4):
            v = [frng.randint(-2, 2) for _ in range(2 * dk)]
            h = [funcalc.from_depth_coords(v[:dk], k), funcalc.from_depth_coords(v[dk:], k)]
            if intlinalg.matvec(M, v) != ktheory.depth_vector(ktheory.sigma(h), k + 1):
                bad.append(f"two-path k={k}")
    B6 = ball(6)
    pats = ktheory.generator_patterns(1, 2) + [Pattern.parse("aB", "ab", "a"), Pattern.parse("", "aBa", "b")]
    for p in pats:
        s = regset.pattern_set(p)
        if {x for x in B6 if x in s} != _brute_pattern(p, 6, B6):
            bad.append(f"pattern {p}")
    report(8, f"1000 seeded set-law cases, HNF/SNF to 50x80, refinement, sigma two-path k=1..4, "
              f"{len(pats)} patterns vs brute force at radius 6", bad)
