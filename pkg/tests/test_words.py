"""Word utilities: parsing, reduction, rotation, ordering."""

import random

import pytest

from curvekit._words import (
    Alphabet,
    commutator,
    concat,
    conjugate,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    letter_key,
    min_rotation,
    power,
    rotations,
    word_key,
)
from curvekit.errors import UnknownLetter

from util import random_reduced_word


class TestAlphabet:
    def test_rank(self):
        assert Alphabet(2, 0).rank == 4
        assert Alphabet(2, 1).rank == 4
        assert Alphabet(2, 2).rank == 5
        assert Alphabet(3, 0).rank == 6

    def test_parse_spaced_and_compact(self):
        ab = Alphabet(2, 0)
        assert ab.parse("a1 B2 a2") == (1, -4, 3)
        assert ab.parse("a1B2a2") == (1, -4, 3)
        assert ab.parse("a1,B2.a2") == (1, -4, 3)
        assert ab.parse("") == ()

    def test_format_roundtrip(self):
        ab = Alphabet(3, 2)
        rng = random.Random(11)
        for _ in range(50):
            w = random_reduced_word(rng, ab.rank, rng.randrange(0, 12))
            assert ab.parse(ab.format(w)) == w

    def test_trivial_format(self):
        assert Alphabet(2, 0).format(()) == "1"

    def test_unknown_letter(self):
        ab = Alphabet(2, 0)
        with pytest.raises(UnknownLetter):
            ab.parse("a1 x3")
        with pytest.raises(UnknownLetter):
            ab.parse("a9")
        with pytest.raises(UnknownLetter):
            ab.parse("a1 !")
        with pytest.raises(UnknownLetter):
            ab.name(9)

    def test_boundary_letters(self):
        ab = Alphabet(2, 3)
        assert ab.parse("c1 c2") == (5, 6)
        assert ab.name(-6) == "C2"


class TestReduction:
    def test_free_reduce(self):
        assert free_reduce((1, -1, 2)) == (2,)
        assert free_reduce((1, 2, -2, -1)) == ()
        assert free_reduce((1, 2, -2, 3)) == (1, 3)

    def test_cyclic_reduce_peel_identity(self):
        rng = random.Random(5)
        for _ in range(100):
            w = random_reduced_word(rng, 4, rng.randrange(0, 14))
            core, peel = cyclic_reduce(w)
            assert is_cyclically_reduced(core)
            assert concat(peel, core, inverse(peel)) == free_reduce(w)

    def test_inverse_involution(self):
        rng = random.Random(6)
        for _ in range(30):
            w = random_reduced_word(rng, 5, 9)
            assert inverse(inverse(w)) == w
            assert free_reduce(w + inverse(w)) == ()

    def test_power_and_commutator(self):
        assert power((1, 2), 3) == (1, 2, 1, 2, 1, 2)
        assert power((1, 2), -1) == (-2, -1)
        assert power((1, 2), 0) == ()
        assert commutator((1,), (2,)) == (1, 2, -1, -2)
        assert conjugate((2,), (1,)) == (2, 1, -2)


class TestRotation:
    def test_rotations_count(self):
        assert list(rotations((1, 2, 3))) == [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
        assert list(rotations(())) == [()]

    def test_letter_order(self):
        # a1 < A1 < b1 < B1 < a2
        assert letter_key(1) < letter_key(-1) < letter_key(2)
        assert letter_key(-2) < letter_key(3)

    def test_min_rotation_invariant(self):
        rng = random.Random(9)
        for _ in range(60):
            w = random_reduced_word(rng, 4, rng.randrange(1, 10))
            canon = min_rotation(w)
            for r in rotations(w):
                assert min_rotation(r) == canon
            assert word_key(canon) <= word_key(w)
