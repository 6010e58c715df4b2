import itertools

import pytest
from hypothesis import given, strategies as st

from pvk import regset
from pvk.freegroup import Word, ball, sphere, word
from pvk.regset import Pattern

from strategies import in_pattern, patterns, set_exprs, starts_with, words

BALL4 = ball(4)
BALL6 = ball(6)


def members(s, radius=4):
    return {w for w in ball(radius) if w in s}


def test_cylinder_basics():
    A, B = regset.cylinder(word("a")), regset.cylinder(word("b"))
    assert (A & B).is_empty
    assert {str(w) for w in members(A, 2)} == {"a", "aa", "ab", "aB"}
    with pytest.raises(ValueError):
        regset.cylinder(Word.identity())


def test_universe_splits_at_level_one():
    parts = [regset.cylinder(t) for t in sphere(1)] + [regset.singleton(Word.identity())]
    assert regset.union(*parts) == regset.universe()


def test_pattern_examples():
    p = regset.pattern_set(Pattern.parse("", "a", "b"))
    assert members(p, 4) == {w for w in BALL4 if in_pattern(w, Word.identity(), (0,), 2)}
    assert (p & regset.cylinder(word("b"))).is_empty
    q = regset.pattern_set(Pattern.parse("", "b", "a"))
    assert regset.translate(word("B"), q) == q | regset.cylinder(word("a"))


def test_pattern_validation():
    with pytest.raises(ValueError):
        Pattern.parse("", "aA", "b")
    with pytest.raises(ValueError):
        Pattern.parse("", "ab", "b")
    with pytest.raises(ValueError):
        Pattern.parse("A", "a", "b")


def test_translate_identity_from_the_first_example():
    lhs = regset.translate(word("a"), regset.cylinder(word("A")))
    rhs = regset.union(*(regset.cylinder(word(t)) for t in ("b", "B", "A")), regset.singleton(Word.identity()))
    assert lhs == rhs == ~regset.cylinder(word("a"))
    assert not regset.equals_mod_finite(lhs, regset.cylinder(word("A")))


def test_r_support_membership():
    # 1_{B(b) u B(a^N b) u B(a^-1) \ B(a^-N b^-1)}
    s = regset.union(
        regset.cylinder(word("b")),
        regset.pattern_set(Pattern.parse("", "a", "b")),
        regset.cylinder(word("A")),
    ) - regset.pattern_set(Pattern.parse("", "A", "B"))
    assert word("Ab") in s
    assert word("AB") not in s
    assert word("aab") in s and word("aa") not in s


def test_classify():
    assert regset.classify(regset.singleton(Word.identity())) == ("finite", [Word.identity()])
    assert regset.classify(regset.empty())[0] == "empty"
    assert regset.classify(regset.cylinder(word("a")))[0] == "infinite"
    A = regset.cylinder(word("a"))
    assert regset.equals_mod_finite(A, A | regset.singleton(word("b")))
    assert A != A | regset.singleton(word("b"))


@given(set_exprs())
def test_membership_matches_oracle(se):
    s, f = se
    assert all((w in s) == f(w) for w in BALL4)


@given(set_exprs(2), set_exprs(2), set_exprs(2))
def test_boolean_laws(x, y, z):
    a, b, c = x[0], y[0], z[0]
    assert ~(a | b) == ~a & ~b
    assert ~(a & b) == ~a | ~b
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert a | a == a == a & a
    assert (a - a).is_empty
    assert ~~a == a


@given(set_exprs(2), set_exprs(2), words(3), words(3))
def test_translation_is_an_action(x, y, g, h):
    a, b = x[0], y[0]
    assert regset.translate(g, regset.translate(h, a)) == regset.translate(g * h, a)
    assert regset.translate(g, a | b) == regset.translate(g, a) | regset.translate(g, b)
    assert regset.translate(g, ~a) == ~regset.translate(g, a)
    assert regset.is_finite(a) == regset.is_finite(regset.translate(g, a))


@given(set_exprs(2), set_exprs(2), set_exprs(1), words(2))
def test_mod_finite_congruence(x, y, z, g):
    a, b, c = x[0], y[0], z[0]
    fin = regset.finite([word("ab"), word("B")])
    a2 = a ^ fin if hasattr(a, "__xor__") else regset.symmetric_difference(a, fin)
    assert regset.equals_mod_finite(a, a2)
    assert regset.equals_mod_finite(a | c, a2 | c)
    assert regset.equals_mod_finite(regset.translate(g, a), regset.translate(g, a2))
    assert regset.equals_mod_finite(a, b) == regset.is_finite(regset.symmetric_difference(a, b))


def _brute_pattern(p: Pattern, K: int) -> set:
    out = set()
    for ks in itertools.product(range(1, K + 1), repeat=len(p.tail)):
        stem = p.instance(ks)
        if len(stem) > K:
            continue
        for w in BALL6:
            if len(stem) + len(w) <= K and (stem * w).codes[: len(stem)] == stem.codes:
                out.add(stem * w)
    return out


@given(patterns(max_head=1, max_tail=2))
def test_pattern_membership_brute_force(p):
    K = 6
    s = regset.pattern_set(p)
    assert {w for w in BALL6 if w in s} == _brute_pattern(p, K)
