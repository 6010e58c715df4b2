"""Reduced words in the free group F_n.

Letters are stored as small integer codes: generator ``i`` is ``2*i`` and its
inverse is ``2*i + 1``, so ``code ^ 1`` inverts a letter.  Text spelling uses
lowercase for generators and uppercase for their inverses (``"abA"`` is
``a b a^-1``).
"""
from __future__ import annotations

import itertools
import string
from typing import Iterable, Iterator, NamedTuple

DEFAULT_RANK = 2


class Letter(NamedTuple):
    index: int
    sign: int  # +1 or -1

    @property
    def code(self) -> int:
        return 2 * self.index + (0 if self.sign > 0 else 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


def letter_char(code: int) -> str:
    ch = string.ascii_lowercase[code >> 1]
    return ch.upper() if code & 1 else ch


def _reduce(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


class Word:
    """An immutable reduced word.  Construction always reduces."""

    __slots__ = ("codes", "rank", "_hash")

    def __init__(self, codes: Iterable[int] = (), rank: int = DEFAULT_RANK):
        codes = _reduce(codes)
        for c in codes:
            if not 0 <= c < 2 * rank:
                raise ValueError(f"letter code {c} outside rank {rank}")
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_hash", hash((codes, rank)))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, rank: int = DEFAULT_RANK) -> "Word":
        return cls((), rank)

    @classmethod
    def _raw(cls, codes: tuple[int, ...], rank: int) -> "Word":
        # caller guarantees codes is reduced and in range
        w = object.__new__(cls)
        object.__setattr__(w, "codes", codes)
        object.__setattr__(w, "rank", rank)
        object.__setattr__(w, "_hash", hash((codes, rank)))
        return w

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_code(c) for c in self.codes)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._raw(self.codes[item], self.rank)
        return Letter.from_code(self.codes[item])

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.codes == other.codes and self.rank == other.rank

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return shortlex_key(self) < shortlex_key(other)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    @property
    def is_identity(self) -> bool:
        return not self.codes

    @property
    def first(self) -> int | None:
        return self.codes[0] if self.codes else None

    @property
    def last(self) -> int | None:
        return self.codes[-1] if self.codes else None


def shortlex_key(w: Word) -> tuple:
    return (len(w.codes), w.codes)


def multiply(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise ValueError("rank mismatch")
    a, b = u.codes, v.codes
    k = 0
    m = min(len(a), len(b))
    while k < m and a[len(a) - 1 - k] == b[k] ^ 1:
        k += 1
    return Word._raw(a[: len(a) - k] + b[k:], u.rank)


def cancellation(u: Word, v: Word) -> int:
    """Number of letters cancelled on each side when forming ``u * v``."""
    a, b = u.codes, v.codes
    k = 0
    m = min(len(a), len(b))
    while k < m and a[len(a) - 1 - k] == b[k] ^ 1:
        k += 1
    return k


def inverse(u: Word) -> Word:
    return Word._raw(tuple(c ^ 1 for c in reversed(u.codes)), u.rank)


def sphere(k: int, rank: int = DEFAULT_RANK) -> list[Word]:
    """All reduced words of length ``k``, in shortlex order."""
    if k < 0:
        raise ValueError("negative length")
    layer: list[tuple[int, ...]] = [()]
    for _ in range(k):
        layer = [w + (c,) for w in layer for c in range(2 * rank) if not w or w[-1] != c ^ 1]
    return [Word._raw(w, rank) for w in layer]


def ball(k: int, rank: int = DEFAULT_RANK) -> list[Word]:
    return [w for j in range(k + 1) for w in sphere(j, rank)]


def sphere_size(k: int, rank: int = DEFAULT_RANK) -> int:
    return 1 if k == 0 else 2 * rank * (2 * rank - 1) ** (k - 1)


def parse_word(text: str, rank: int = DEFAULT_RANK) -> Word:
    """Parse ``[a-zA-Z]*``; uppercase letters are inverses.  Input is reduced."""
    codes = []
    for ch in text:
        if not ch.isascii() or not ch.isalpha():
            raise ValueError(f"invalid character {ch!r} in word {text!r}")
        idx = ord(ch.lower()) - ord("a")
        if idx >= rank:
            raise ValueError(f"letter {ch!r} outside the first {rank} generators")
        codes.append(2 * idx + (1 if ch.isupper() else 0))
    return Word(codes, rank)


def format_word(w: Word) -> str:
    return "".join(letter_char(c) for c in w.codes)


def word(text: str, rank: int = DEFAULT_RANK) -> Word:
    return parse_word(text, rank)


def letters(rank: int = DEFAULT_RANK) -> list[Word]:
    return sphere(1, rank)


def words_up_to(k: int, rank: int = DEFAULT_RANK) -> Iterator[Word]:
    return itertools.chain.from_iterable(sphere(j, rank) for j in range(k + 1))
