"""Shared sampling helpers for the test suite."""

from __future__ import annotations

import random

from curvekit._words import Word, free_reduce


def random_reduced_word(rng: random.Random, rank: int, length: int) -> Word:
    """A freely reduced word of exactly ``length`` letters."""
    out: list[int] = []
    while len(out) < length:
        s = rng.choice((1, -1)) * rng.randrange(1, rank + 1)
        if out and out[-1] == -s:
            continue
        out.append(s)
    return tuple(out)


def random_cyclic_word(rng: random.Random, rank: int, length: int) -> Word:
    """A freely and cyclically reduced word of exactly ``length`` letters."""
    while True:
        w = random_reduced_word(rng, rank, length)
        if len(w) < 2 or w[0] != -w[-1]:
            return w


def random_nontrivial_word(rng, group, length):
    """A cyclically reduced word that is not trivial in ``group``."""
    while True:
        w = random_cyclic_word(rng, group.alphabet.rank, length)
        if w and not group.is_trivial(w):
            return w


def assert_reduced(word: Word) -> None:
    assert free_reduce(word) == tuple(word)
