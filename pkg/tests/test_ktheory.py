import random

import pytest

from pvk import funcalc, intlinalg, ktheory, regset
from pvk.freegroup import Word, sphere, word
from pvk.regset import Pattern
from pvk.runwords import GenExpr, RunWord


def cyl(t):
    return funcalc.indicator(regset.cylinder(word(t)))


def test_sigma_examples():
    one = funcalc.one()
    assert funcalc.equals_mod_I(ktheory.sigma([funcalc.zero(), -cyl("B")]), cyl("a") + cyl("A"))
    assert funcalc.equals_mod_I(ktheory.sigma([-cyl("A"), funcalc.zero()]), cyl("b") + cyl("B"))
    assert ktheory.sigma([3 * one, -2 * one]) == funcalc.zero()


def test_sigma_matrix_shape_and_constants():
    M = ktheory.sigma_matrix(1)
    assert (len(M), len(M[0])) == (12, 8)
    for v in ktheory.constant_kernel_vectors(2):
        assert not any(intlinalg.matvec(ktheory.sigma_matrix(2), v))
    # column (generator a, cylinder a) is 1_B(a) - a.1_B(a) = 1_B(a) - 1_B(aa)
    col = [row[0] for row in M]
    expected = funcalc.coords_at_depth(cyl("a") - cyl("aa"), 2)
    assert col == expected


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sigma_matrix_two_path_consistency(k):
    rng = random.Random(k)
    dk = len(sphere(k))
    M = ktheory.sigma_matrix(k)
    for _ in range(6):
        v = [rng.randint(-3, 3) if rng.random() < 0.3 else 0 for _ in range(2 * dk)]
        h = [funcalc.from_depth_coords(v[:dk], k), funcalc.from_depth_coords(v[dk:], k)]
        via_funcalc = ktheory.depth_vector(ktheory.sigma(h), k + 1)
        assert intlinalg.matvec(M, v) == via_funcalc


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_k1_example1_rank_two(k):
    rep = ktheory.k1_example1(k)
    assert rep.passed and rep.kernel_rank == 2


def test_kernel_embeds_under_cylinder_split():
    for k in (1, 2):
        dk = len(sphere(k))
        K = intlinalg.kernel_basis(ktheory.sigma_matrix(k))
        K2 = intlinalg.kernel_basis(ktheory.sigma_matrix(k + 1))
        for v in K:
            up = funcalc.expand_depth(v[:dk], k) + funcalc.expand_depth(v[dk:], k)
            assert intlinalg.lattice_contains(K2, up)


def test_reduce_example1_examples():
    c = ktheory.k0_reduce_example1(cyl("ab"))
    assert c.canonical == (0, 1) and c.verify()
    c = ktheory.k0_reduce_example1(funcalc.one())
    assert c.canonical == (0, 0) and c.verify()
    c = ktheory.k0_reduce_example1(cyl("a"))
    assert c.canonical == (1, 0) and c.verify()
    assert all(x.is_zero for x in c.witness_terms)
    c = ktheory.k0_reduce_example1(cyl("A"))
    assert c.canonical == (-1, 0) and c.verify()


def test_reduce_example1_rejects_patterns():
    with pytest.raises(funcalc.NotCylinderFinitary):
        ktheory.k0_reduce_example1(funcalc.indicator(regset.pattern_set(Pattern.parse("", "a", "b"))))


def test_reduce_example1_random_combinations():
    rng = random.Random(0)
    words = [w for k in (1, 2, 3) for w in sphere(k)]
    for _ in range(100):
        coefs = {w: rng.randint(-4, 4) for w in rng.sample(words, rng.randint(1, 5))}
        f = funcalc.cylinder_combination(coefs)
        c = ktheory.k0_reduce_example1(f)
        assert c.verify()
        # the class only depends on the last letters: count them independently
        n = sum(v for w, v in coefs.items() if w.codes[-1] == 0) - sum(v for w, v in coefs.items() if w.codes[-1] == 1)
        m = sum(v for w, v in coefs.items() if w.codes[-1] == 2) - sum(v for w, v in coefs.items() if w.codes[-1] == 3)
        assert c.canonical == (n, m)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_independence_example1(k):
    rep = ktheory.k0_independence_example1(k)
    assert rep.passed


def test_reduce_example2_examples():
    for e in (GenExpr.of(RunWord.cylinder(word("a"))),
              GenExpr.of(RunWord.pattern(Pattern.parse("", "a", "b"))),
              GenExpr.one(),
              GenExpr.of(RunWord.pattern(Pattern.parse("bA", "BA", "B")), -3)):
        c = ktheory.k0_reduce_example2(e)
        assert c.canonical == () and c.verify()
    c = ktheory.k0_reduce_example2(cyl("aB") - 2 * cyl("b"))
    assert c.verify()


def test_reduce_example2_products():
    p = GenExpr.of(RunWord.cylinder(word("a")))
    q = GenExpr.of(RunWord.pattern(Pattern.parse("", "a", "b")))
    q2 = GenExpr.of(RunWord.pattern(Pattern.parse("a", "B", "A")))
    r = (p - q * p) * (p - q2 * p)
    assert ktheory.k0_reduce_example2(r).verify()


def test_example2_kernel():
    assert ktheory.r_invariance() == (True, True)
    rng = random.Random(1)
    for _ in range(10):
        assert ktheory.kernel_pair_holds(*(rng.randint(-5, 5) for _ in range(4)))
    a, b = word("a"), word("b")
    p, q = cyl("a"), funcalc.zero()
    assert not funcalc.equals_mod_I(p + q, funcalc.translate(a, p) + funcalc.translate(b, q))
    rep = ktheory.k1_example2(2, 2)
    assert rep.passed and rep.kernel_rank == 4


def test_r_function_values():
    r = ktheory.r_function()
    assert r(word("Ab")) == 1 and r(word("AB")) == 0
    assert r(word("aab")) == 1 and r(word("aaB")) == 0 and r(word("bA")) == 1


# coefficient table as printed: (p+q, a.p+b.q) per row
PRINTED = {
    "a": ("d1+d1'+a1'", "d1+d2'"),
    "b": ("d1+a1+d1'", "d2+d1'"),
    "A": ("d2+d1'", "d2+d2'+b1'"),
    "B": ("d1+d2'", "d2+b1+d2'"),
    "a+ b": ("a1+a2'", "a1"),
    "b+ a": ("a2+a1'", "a1'"),
    "A+ B": ("b1", "b1+b2'"),
    "B+ A": ("b1'", "b1'+b2"),
}


def test_coefficient_table_matches_printed_table():
    table = ktheory.coefficient_table()
    for row, (lhs, rhs) in PRINTED.items():
        got_l, got_r = table[row]
        assert got_l == {u: 1 for u in lhs.split("+")}
        assert got_r == {u: 1 for u in rhs.split("+")}
    assert ktheory.coefficient_table_check()[0]


def test_report_serializes():
    rep = ktheory.k0_report_example2(1)
    d = rep.to_dict()
    assert d["schema"] == ktheory.SCHEMA and rep.passed
    assert rep.to_json() == ktheory.k0_report_example2(1).to_json()
