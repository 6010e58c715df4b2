import pytest
from hypothesis import given

from pvk.freegroup import (
    Word, ball, cancellation, format_word, inverse, multiply, parse_word, shortlex_key,
    sphere, sphere_size, word, words_up_to,
)

from strategies import words


def test_parse_examples():
    assert word("abA").codes == (0, 2, 1)
    assert word("aA").is_identity
    assert word("Bab").codes == (3, 0, 2)
    assert format_word(word("abA")) == "abA"


def test_parse_rejects_foreign_letters():
    with pytest.raises(ValueError):
        parse_word("abc")
    with pytest.raises(ValueError):
        parse_word("x")


def test_rank_three_alphabet():
    w = parse_word("cC", rank=3)
    assert w.is_identity
    assert parse_word("c", rank=3).codes == (4,)


@given(words(), words(), words())
def test_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words())
def test_identity_and_inverse(u):
    e = Word.identity()
    assert u * e == u == e * u
    assert u * inverse(u) == e
    assert inverse(inverse(u)) == u


@given(words(), words())
def test_length_parity(u, v):
    assert len(multiply(u, v)) % 2 == (len(u) + len(v)) % 2


@given(words(), words())
def test_cancellation_count(u, v):
    assert len(u * v) == len(u) + len(v) - 2 * cancellation(u, v)


@pytest.mark.parametrize("k", range(0, 9))
def test_sphere_sizes(k):
    ws = sphere(k)
    expected = 1 if k == 0 else 4 * 3 ** (k - 1)
    assert len(ws) == len(set(ws)) == expected == sphere_size(k)
    assert all(len(w) == k for w in ws)


def test_shortlex_order_of_letters():
    assert [format_word(w) for w in sphere(1)] == ["a", "A", "b", "B"]
    ws = list(words_up_to(3))
    assert ws == sorted(ws, key=shortlex_key)
    assert ws == ball(3)
