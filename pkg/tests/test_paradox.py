import dataclasses

import pytest

from pvk import funcalc, paradox, regset, xprod
from pvk.freegroup import Word, ball, word
from pvk.paradox import ParadoxCert
from pvk.regset import Pattern
from pvk.suites import obstruction_fixtures

BALL4 = ball(4)


def test_standard_cert_is_strong():
    c = paradox.standard_cert()
    assert c.strength == paradox.STRONG
    v = paradox.verify_cert(c)
    assert v.passed, v.failures
    first, second = c.halves
    imgs = c.images()
    # indicator-level restatement: translated pieces sum to 1 exactly
    total = funcalc.total([funcalc.indicator(S) for S in imgs])
    assert total == funcalc.one()
    for half in (first, second):
        assert funcalc.total([funcalc.indicator(c.pieces[k]) for k in half]) == funcalc.one()


def test_a_power_set():
    D = paradox.a_power_set()
    assert {str(w) for w in BALL4 if w in D} == {"", "A", "AA", "AAA", "AAAA"}


def test_corrupted_cert_fails():
    c = paradox.standard_cert()
    bad = dataclasses.replace(c, translators=(Word.identity(), Word.identity(), Word.identity(), word("B")))
    v = paradox.verify_cert(bad)
    assert not v and "translates not disjoint" in v.failures


@pytest.mark.parametrize("t", ["a", "ab", "Ba", "aBA"])
def test_cylinder_cert_is_weak_valid(t):
    c = paradox.cylinder_cert(word(t))
    assert c.strength == paradox.WEAK and paradox.verify_cert(c)
    for img in c.images():
        assert img <= regset.cylinder(word(t))


def test_cylinder_cert_for_a_uses_disjoint_subcylinders():
    c = paradox.cylinder_cert(word("a"))
    i1, i2 = c.images()
    assert (i1 & i2).is_empty
    assert i1 <= regset.cylinder(word("aa")) and i2 <= regset.cylinder(word("ab"))


def test_degenerate_cylinder_cert_fails():
    c = paradox.cylinder_cert(word("a"))
    bad = dataclasses.replace(c, translators=(c.translators[0], c.translators[0]))
    v = paradox.verify_cert(bad)
    assert not v and "translates not disjoint" in v.failures
    with pytest.raises(ValueError):
        paradox.cylinder_cert(Word.identity())


def test_isometries_from_standard_cert():
    iso = paradox.cert_to_isometries(paradox.standard_cert())
    assert iso.passed, iso.checks()
    p = xprod.CcElement.function(funcalc.one())
    v, w = iso.v, iso.w
    assert v * v.adjoint() == p == w * w.adjoint()
    assert v.adjoint() * v + w.adjoint() * w == p
    assert xprod.is_function(v.adjoint() * v)


def test_isometries_detect_corruption():
    c = paradox.standard_cert()
    with pytest.raises(ValueError):
        paradox.cert_to_isometries(paradox.cylinder_cert(word("a")))
    bad = dataclasses.replace(c, translators=(Word.identity(), word("A"), Word.identity(), word("b")))
    with pytest.raises(ValueError):
        paradox.cert_to_isometries(bad)


def test_infiniteness_without_obstructions():
    for t in ball(3):
        if t.is_identity:
            continue
        w = paradox.infiniteness_witness(t)
        assert w.verify()
        if t.codes[-1] != t.codes[0] ^ 1:
            assert w.t == t
    assert paradox.infiniteness_witness(word("a")).t == word("a")
    assert paradox.infiniteness_witness(word("aBA")).t == word("aBAb")
    w = paradox.infiniteness_witness(Pattern.parse("b", "a", "b"))
    assert w.verify() and w.t == word("baB")


@pytest.mark.parametrize("name,p,obs", obstruction_fixtures(), ids=lambda x: x if isinstance(x, str) else "")
def test_infiniteness_with_obstructions(name, p, obs):
    w = paradox.infiniteness_witness(p, obs)
    assert w.verify()
    tp = funcalc.translate(w.t, w.p)
    assert funcalc.leq_mod_I(tp, w.r) and not funcalc.equals_mod_I(tp, w.r)


def test_first_obstruction_family_gives_short_witness():
    w = paradox.infiniteness_witness(word("a"), [Pattern.parse("", "a", "b")])
    # B(a^N b) removed: t = a B a b maps B(a) into B(aBab a)
    assert w.t == word("aBab")


def test_malformed_obstruction():
    with pytest.raises(ValueError):
        paradox.infiniteness_witness(word("a"), [word("b")])
    with pytest.raises(ValueError):
        paradox.infiniteness_witness(word("a"), [word("a")])


def _colour(x: Word) -> int:
    k = 0
    for c in x.codes:
        if c == 0:
            k += 1
        elif c == 1:
            k -= 1
        else:
            break
    return k % 3


def test_three_coloring():
    tc = paradox.three_coloring()
    assert all(tc.checks().values()), tc.checks()
    assert tc.t == word("a")
    parts = list(tc.parts)
    assert funcalc.total(parts) == funcalc.one()
    for x in BALL4:
        assert [int(p(x)) for p in parts] == [int(_colour(x) == i) for i in range(3)]
    for p in parts:
        assert funcalc.translate(tc.t, p) * p == funcalc.zero()
