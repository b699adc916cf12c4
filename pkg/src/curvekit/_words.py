"""Words in the generators of a surface group.

A word is a tuple of nonzero ints: generator ``i`` (1-based) is ``+i`` and its
inverse is ``-i``.  The standard generator names are ``a1, b1, ..., ag, bg``
for the handles, plus ``c1, ..., c(b-1)`` for all but the last boundary
component when the surface has boundary.  In text form an uppercase initial
letter denotes the inverse, so ``"A1"`` parses to the inverse of ``"a1"``.
Words may be written with or without separators (spaces, commas, dots).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import InvalidSignature, UnknownLetter

Word = tuple[int, ...]

_TOKEN_RE = re.compile(r"([A-Za-z])(\d+)|([,.\s]+)|(.)")


class Alphabet:
    """Generator names for the fundamental group of a surface.

    For genus ``g`` with ``b`` boundary components the group is generated by
    ``a1, b1, ..., ag, bg`` and, when ``b >= 1``, by ``c1 .. c(b-1)``; the
    remaining boundary word is a product of the others, so it never needs its
    own letter.
    """

    def __init__(self, genus: int, boundary: int = 0):
        if genus < 0 or boundary < 0:
            raise InvalidSignature(f"negative signature ({genus}, {boundary})")
        self.genus = genus
        self.boundary = boundary
        self.rank = 2 * genus + (boundary - 1 if boundary >= 1 else 0)
        names = []
        for i in range(1, genus + 1):
            names.append(f"a{i}")
            names.append(f"b{i}")
        for j in range(1, boundary):
            names.append(f"c{j}")
        self._names = names
        self._index = {name: k + 1 for k, name in enumerate(names)}

    def letter(self, name: str) -> int:
        """Return the signed int for a token such as ``"a2"`` or ``"B1"``."""
        base = name[0].lower() + name[1:]
        sign = -1 if name[0].isupper() else 1
        try:
            return sign * self._index[base]
        except KeyError:
            raise UnknownLetter(f"{name!r} is not a generator of this group") from None

    def name(self, letter: int) -> str:
        """Return the token for a signed int letter."""
        if letter == 0 or abs(letter) > self.rank:
            raise UnknownLetter(f"letter {letter} out of range for rank {self.rank}")
        base = self._names[abs(letter) - 1]
        return base if letter > 0 else base[0].upper() + base[1:]

    def parse(self, text: str) -> Word:
        """Parse a word string; separators are optional; "1" is the identity."""
        if text.strip() in ("", "1"):
            return ()
        out = []
        for match in _TOKEN_RE.finditer(text):
            char, digits, sep, bad = match.groups()
            if sep is not None:
                continue
            if bad is not None:
                raise UnknownLetter(f"unexpected character {bad!r} in word {text!r}")
            out.append(self.letter(char + digits))
        return tuple(out)

    def format(self, word: Iterable[int]) -> str:
        """Render a word as a compact string of tokens."""
        word = tuple(word)
        if not word:
            return "1"
        return "".join(self.name(x) for x in word)

    def __repr__(self):
        return f"Alphabet(genus={self.genus}, boundary={self.boundary})"


def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in word:
        if x == 0:
            raise UnknownLetter("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    """Return the inverse word."""
    return tuple(-x for x in reversed(word))


def concat(*parts: Iterable[int]) -> Word:
    """Concatenate and freely reduce."""
    merged: list[int] = []
    for part in parts:
        merged.extend(part)
    return free_reduce(merged)


def conjugate(g: Sequence[int], word: Sequence[int]) -> Word:
    """Return ``g * word * g^-1`` freely reduced."""
    return concat(g, word, inverse(g))


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """Return ``x y x^-1 y^-1`` freely reduced."""
    return concat(x, y, inverse(x), inverse(y))


def power(word: Sequence[int], n: int) -> Word:
    """Return ``word ** n`` freely reduced (negative exponents allowed)."""
    base = tuple(word) if n >= 0 else inverse(word)
    return free_reduce(base * abs(n))


def cyclic_reduce(word: Sequence[int]) -> tuple[Word, Word]:
    """Split a word as ``peel * core * peel^-1`` with ``core`` cyclically reduced.

    Returns ``(core, peel)``.
    """
    w = list(free_reduce(word))
    peel: list[int] = []
    while len(w) >= 2 and w[0] == -w[-1]:
        peel.append(w[0])
        w = w[1:-1]
    return tuple(w), tuple(peel)


def is_cyclically_reduced(word: Sequence[int]) -> bool:
    w = tuple(word)
    if w != free_reduce(w):
        return False
    return not (len(w) >= 2 and w[0] == -w[-1])


def rotations(word: Sequence[int]) -> Iterator[Word]:
    """Yield all cyclic rotations of a word (itself first)."""
    w = tuple(word)
    for k in range(max(len(w), 1)):
        yield w[k:] + w[:k]


def letter_key(letter: int) -> int:
    """Total order on letters: a1 < A1 < b1 < B1 < a2 < ..."""
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def word_key(word: Sequence[int]) -> tuple:
    """Sort key ordering words by length, then letterwise."""
    return (len(word), tuple(letter_key(x) for x in word))


def min_rotation(word: Sequence[int]) -> Word:
    """The lexicographically least cyclic rotation under :func:`letter_key`."""
    w = tuple(word)
    if not w:
        return w
    return min(rotations(w), key=word_key)


def substitute(word: Sequence[int], images: dict[int, Sequence[int]]) -> Word:
    """Apply a letter substitution homomorphism and freely reduce.

    ``images`` maps positive letters to replacement words; letters without an
    entry map to themselves.
    """
    out: list[int] = []
    for x in word:
        image = images.get(abs(x))
        if image is None:
            piece: tuple[int, ...] = (x,)
        else:
            piece = tuple(image) if x > 0 else inverse(tuple(image))
        for y in piece:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)
