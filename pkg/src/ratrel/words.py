"""Alphabets, finite words and ultimately periodic omega-words.

Finite words are plain ``str`` values whose characters are letters; the
empty word is ``""``.  An ultimately periodic omega-word is a
:class:`LassoWord` ``stem . cycle^omega``.  Indices are 1-based, matching
the usual ``w(1) w(2) ...`` notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

FiniteWord = str
EMPTY: FiniteWord = ""


class WordError(ValueError):
    """Malformed word or lasso."""


class AlphabetError(ValueError):
    """A word uses letters outside the declared alphabet."""


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in {letters!r}")
        for a in letters:
            if not isinstance(a, str) or len(a) != 1:
                raise AlphabetError(f"letters must be single characters, got {a!r}")

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def covers(self, word: str) -> bool:
        return all(a in self.letters for a in word)

    def check(self, word: str, what: str = "word") -> None:
        bad = sorted({a for a in word if a not in self.letters})
        if bad:
            raise AlphabetError(f"{what} {word!r} uses letters {bad} outside {list(self.letters)}")

    def __str__(self) -> str:
        return "{" + ",".join(self.letters) + "}"


BINARY = Alphabet(("0", "1"))
CODE = Alphabet(("0", "1", "A"))
SEPARATOR = "A"


@dataclass(frozen=True)
class LassoWord:
    """The omega-word ``stem . cycle . cycle . ...``; ``cycle`` is non-empty."""

    stem: FiniteWord
    cycle: FiniteWord

    def __post_init__(self) -> None:
        if not isinstance(self.stem, str) or not isinstance(self.cycle, str):
            raise WordError("stem and cycle must be strings")
        if not self.cycle:
            raise WordError("lasso cycle must be non-empty")

    @classmethod
    def parse(cls, text: str) -> "LassoWord":
        """Parse ``STEM|CYCLE`` (``|01`` has an empty stem)."""
        if text.count("|") != 1:
            raise WordError(f"expected STEM|CYCLE, got {text!r}")
        stem, cycle = text.split("|")
        return cls(stem, cycle)

    def __str__(self) -> str:
        return f"{self.stem}|{self.cycle}"

    def __len__(self) -> int:
        # size of the representation, not of the omega-word
        return len(self.stem) + len(self.cycle)

    @property
    def letters(self) -> frozenset[str]:
        """Letters occurring in the omega-word."""
        return frozenset(self.stem) | frozenset(self.cycle)

    def over(self, alphabet: Alphabet) -> bool:
        return alphabet.covers(self.stem) and alphabet.covers(self.cycle)

    def check(self, alphabet: Alphabet, what: str = "lasso") -> None:
        alphabet.check(self.stem + self.cycle, what)


def letter_at(w: LassoWord, i: int) -> str:
    if i < 1:
        raise IndexError(f"positions are 1-based, got {i}")
    if i <= len(w.stem):
        return w.stem[i - 1]
    return w.cycle[(i - len(w.stem) - 1) % len(w.cycle)]


def prefix(w: LassoWord, n: int) -> FiniteWord:
    """The first ``n`` letters of ``w``."""
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    if n <= len(w.stem):
        return w.stem[:n]
    rest = n - len(w.stem)
    reps, extra = divmod(rest, len(w.cycle))
    return w.stem + w.cycle * reps + w.cycle[:extra]


def drop(w: LassoWord, n: int) -> LassoWord:
    """The suffix of ``w`` that starts at position ``n + 1``."""
    if n <= len(w.stem):
        return LassoWord(w.stem[n:], w.cycle)
    r = (n - len(w.stem)) % len(w.cycle)
    return LassoWord("", w.cycle[r:] + w.cycle[:r])


def primitive_root(word: FiniteWord) -> FiniteWord:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonicalize(w: LassoWord) -> LassoWord:
    """Primitive cycle and shortest stem; two lassos denote the same
    omega-word iff their canonical forms are equal."""
    if not w.cycle:
        raise WordError("lasso cycle must be non-empty")
    stem, cycle = w.stem, primitive_root(w.cycle)
    while stem and stem[-1] == cycle[-1]:
        stem, cycle = stem[:-1], cycle[-1] + cycle[:-1]
    if stem == w.stem and cycle == w.cycle:
        return w
    return LassoWord(stem, cycle)


def is_canonical(w: LassoWord) -> bool:
    return canonicalize(w) == w


def equals_omega(a: LassoWord, b: LassoWord, alphabet: Alphabet | None = None) -> bool:
    if alphabet is not None:
        a.check(alphabet)
        b.check(alphabet)
    return canonicalize(a) == canonicalize(b)


def unroll(w: LassoWord, k: int) -> LassoWord:
    """Same omega-word with the cycle repeated ``k`` times (``k >= 1``)."""
    if k < 1:
        raise ValueError("unroll factor must be positive")
    return LassoWord(w.stem, w.cycle * k)


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def parse_lasso(text: str, alphabet: Alphabet | None = None) -> LassoWord:
    w = LassoWord.parse(text)
    if alphabet is not None:
        w.check(alphabet)
    return w
