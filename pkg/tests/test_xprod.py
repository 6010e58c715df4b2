from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pvk import funcalc, regset, xprod
from pvk.freegroup import Word, ball, word
from pvk.xprod import CcElement

from strategies import functions, starts_with, words

BALL4 = ball(4)


def overlap_oracle(i, s, x):
    """sum over |g| < i with |s^-1 g| < i of 1_B(g)(x) 1_B(s^-1 g)(s^-1 x)."""
    sinv = ~s
    total = 0
    for g in ball(i - 1):
        h = sinv * g
        if len(h) < i and starts_with(x, g) and starts_with(sinv * x, h):
            total += 1
    return total


@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("s", ["a", "B", "ab", "aa", "bA"])
def test_three_overlap_forms_agree(i, s):
    s = word(s)
    f = xprod.amen_overlap(i, s)
    assert f == xprod.amen_overlap_terms(i, s) == xprod.amen_overlap_direct(i, s)
    assert all(f(x) == overlap_oracle(i, s, x) for x in BALL4)


@pytest.mark.parametrize("i", [2, 5, 7])
@pytest.mark.parametrize("s", ["a", "ab", "aBB"])
def test_defect_machine_matches_generic_arithmetic(i, s):
    s = word(s)
    assert xprod.amen_defect(i, s) == xprod.amen_defect_generic(i, s)


def test_norm_is_i_mod_I():
    for i in range(1, 8):
        assert funcalc.infinite_values(xprod.amen_norm(i)) == frozenset({Fraction(i)})
        T = xprod.amen_T(i)
        assert xprod.inner(T, T) == xprod.amen_norm(i)


def test_norm_bound_examples():
    assert xprod.amen_norm2_sq(4, word("a")) == Fraction(1, 2)
    for i in range(1, 9):
        for s in ball(min(i, 3)):
            assert xprod.amen_norm2_sq(i, s) <= Fraction(2 * len(s), i)


def test_recursion_and_cauchy_schwarz():
    for n in range(1, 7):
        for s in ball(min(n, 3)):
            assert xprod.recursion_defect_values(n, s) == frozenset({1})
    for s in ball(3):
        if not s.is_identity:
            assert all(0 <= v <= 1 for v in xprod.cauchy_schwarz_values(s))


def test_sup_norm_scaling():
    # 1 - T_i T_i^*(s) mod I is |s|/i times 1 - T_|s| T_|s|^*(s)
    for s in (word("a"), word("ab"), word("aBa")):
        k = len(s)
        base = funcalc.sup_norm(funcalc.one() - Fraction(1, k) * xprod.amen_overlap(k, s), mod_I=True)
        for i in range(k, k + 5):
            d = funcalc.one() - Fraction(1, i) * xprod.amen_overlap(i, s)
            assert funcalc.sup_norm(d, mod_I=True) == Fraction(k, i) * base


def elements(draw_words=words(2)):
    return st.lists(st.tuples(draw_words, functions(1)), max_size=2).map(
        lambda ts: CcElement([(t, f) for t, (f, _) in ts])
    )


@given(elements(), elements(), elements())
def test_star_algebra_laws(S, T, R):
    assert (S * T) * R == S * (T * R)
    assert S * (T + R) == S * T + S * R
    assert (S * T).adjoint() == T.adjoint() * S.adjoint()
    assert S.adjoint().adjoint() == S


@given(words(3), words(3), functions(1))
def test_covariance(s, t, fo):
    f = fo[0]
    us, ut = CcElement.unitary(s), CcElement.unitary(t)
    assert us * ut == CcElement.unitary(s * t)
    assert us * us.adjoint() == CcElement.unitary(Word.identity())
    assert us * CcElement.function(f) * us.adjoint() == CcElement.function(funcalc.translate(s, f))
