from fractions import Fraction

import pytest

from pvk import funcalc, regset, sexpr
from pvk.freegroup import Word, word
from pvk.regset import Pattern
from pvk.runwords import GenExpr, RunWord


def test_parse_and_unparse_roundtrip():
    text = '(add (ind (cyl "ab")) (scl 3/2 (trf "B" (ind (pat "" "b" "a")))))'
    node = sexpr.parse(text)
    assert sexpr.unparse(node) == text
    assert node[2][1] == Fraction(3, 2)


@pytest.mark.parametrize("bad", ["", "(", ")", "(cyl \"a\"))", "(cyl \"a\" ", "(cyl \"x\")", "(cyl a)",
                                 "(frob)", "(dif (all))", "(pat \"\" \"aA\" \"b\")", "(cyl \"a\") (all)"])
def test_set_grammar_errors(bad):
    with pytest.raises(sexpr.SExprError):
        sexpr.parse_set(bad)


def test_set_evaluation():
    assert sexpr.parse_set('(cyl "a")') == regset.cylinder(word("a"))
    assert sexpr.parse_set('(cyl "")') == regset.universe()
    assert sexpr.parse_set('(uni (cyl "a") (cyl "A") (cyl "b") (cyl "B") (fin ""))') == regset.universe()
    assert sexpr.parse_set('(cmp (all))') == regset.empty() == sexpr.parse_set("(none)")
    s = sexpr.parse_set('(tr "B" (pat "" "b" "a"))')
    assert s == regset.pattern_set(Pattern.parse("", "b", "a")) | regset.cylinder(word("a"))
    assert sexpr.parse_set('(dif (cyl "a") (cyl "ab"))') == regset.cylinder(word("a")) - regset.cylinder(word("ab"))
    assert sexpr.parse_set('(int (cyl "a") (cyl "b"))').is_empty


def test_function_evaluation():
    f = sexpr.parse_function('(sub (one) (ind (cyl "a")))')
    assert f == funcalc.one() - funcalc.indicator(regset.cylinder(word("a")))
    g = sexpr.parse_function('(mul (ind (cyl "a")) (scl 2 (ind (pat "" "a" "b"))))')
    assert g(word("aab")) == 2 and g(word("aa")) == 0
    assert sexpr.parse_function("(zero)") == funcalc.zero()
    with pytest.raises(sexpr.SExprError):
        sexpr.parse_function('(cyl "a")')


def test_genexpr_translation():
    e = sexpr.parse_genexpr('(sub (ind (pat "" "ab" "a")) (scl 2 (ind (cyl "b"))))')
    assert e == GenExpr.of(RunWord.pattern(Pattern.parse("", "ab", "a"))) - GenExpr.of(RunWord.cylinder(word("b")), 2)
    f = sexpr.parse_function('(sub (ind (pat "" "ab" "a")) (scl 2 (ind (cyl "b"))))')
    assert e.to_stepfunction() == f


@pytest.mark.parametrize("text", ['(ind (pat "" "aB" "a"))', '(scl 1/2 (one))', '(ind (fin "a"))',
                                  '(ind (uni (cyl "a") (cyl "b")))'])
def test_out_of_span(text):
    with pytest.raises(sexpr.OutOfSpan):
        sexpr.parse_genexpr(text)
