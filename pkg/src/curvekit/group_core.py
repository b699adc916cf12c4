"""Surface-group algebra: word problem, conjugacy, roots, conjugators.

Surfaces with boundary have free fundamental group, where everything reduces
to free and cyclic reduction.  Closed surfaces of genus ``g >= 2`` are
one-relator quotients whose relator satisfies the C'(1/6) small-cancellation
condition (distinct symmetrized relators share at most one letter), so Dehn's
algorithm decides the word problem and the classical annular form -- minimal
cyclic words up to rotation and half-relator swaps -- decides conjugacy.

Every public routine that produces an algebraic identity (a conjugator, a
root) verifies it before returning.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from ._words import (
    Alphabet,
    Word,
    concat,
    conjugate,
    cyclic_reduce,
    free_reduce,
    inverse,
    power,
    rotations,
    word_key,
)
from .errors import (
    InvalidSignature,
    NotConjugate,
    ResourceLimit,
    TrivialElement,
)


class GroupPresentation:
    """Fundamental group of a compact orientable surface.

    ``boundary >= 1`` gives a free group of rank ``2*genus + boundary - 1``;
    ``boundary == 0`` (which requires ``genus >= 2``) gives the one-relator
    group with relator ``[a1,b1][a2,b2]...[ag,bg]``.
    """

    def __init__(self, genus: int, boundary: int = 0, *, orbit_cap: int = 200_000):
        if boundary == 0 and genus < 2:
            raise InvalidSignature(
                f"closed surface of genus {genus} is not supported (need genus >= 2)"
            )
        self.alphabet = Alphabet(genus, boundary)
        self.genus = genus
        self.boundary = boundary
        self.is_free = boundary >= 1
        self.orbit_cap = orbit_cap
        self._canon_cache: dict[tuple[Word, bool], Word] = {}
        if self.is_free:
            self.relator: Word = ()
            self._half = 0
            self._starts: dict[int, tuple[Word, ...]] = {}
        else:
            rel: list[int] = []
            for i in range(1, genus + 1):
                a, b = 2 * i - 1, 2 * i
                rel.extend((a, b, -a, -b))
            self.relator = tuple(rel)
            self._half = 2 * genus
            starts: dict[int, list[Word]] = {}
            for base in (self.relator, inverse(self.relator)):
                for rot in rotations(base):
                    starts.setdefault(rot[0], []).append(rot)
            # every signed letter occurs exactly once in the relator cycle and
            # once in the inverse cycle, so each start letter has two entries
            self._starts = {x: tuple(rs) for x, rs in starts.items()}

    # ------------------------------------------------------------------
    # parsing helpers

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def format(self, word: Iterable[int]) -> str:
        return self.alphabet.format(word)

    def boundary_words(self) -> list[Word]:
        """Words of the boundary circles, in component order."""
        if self.boundary == 0:
            return []
        g = self.genus
        commutators: list[int] = []
        for i in range(1, g + 1):
            a, b = 2 * i - 1, 2 * i
            commutators.extend((a, b, -a, -b))
        cs = [2 * g + j for j in range(1, self.boundary)]
        out = [(c,) for c in cs]
        last = inverse(free_reduce(tuple(commutators) + tuple(cs)))
        out.append(last)
        return out

    def __repr__(self):
        return f"GroupPresentation(genus={self.genus}, boundary={self.boundary})"

    # ------------------------------------------------------------------
    # word problem

    def _longest_match(self, seq: Sequence[int], i: int, cap: int) -> tuple[int, Word | None]:
        """Longest prefix of a symmetrized relator matching ``seq`` at ``i``.

        ``cap`` limits the match length (never beyond the end of ``seq``).
        """
        best_t, best_rel = 0, None
        for rel in self._starts.get(seq[i], ()):
            t = 1
            while t < cap and seq[i + t] == rel[t]:
                t += 1
            if t > best_t:
                best_t, best_rel = t, rel
        return best_t, best_rel

    def is_trivial(self, word: Iterable[int]) -> bool:
        """Decide whether ``word`` represents the identity."""
        w = free_reduce(word)
        if self.is_free:
            return not w
        while w:
            n = len(w)
            hit = None
            for i in range(n):
                t, rel = self._longest_match(w, i, min(len(self.relator), n - i))
                if t > self._half:
                    hit = (i, t, rel)
                    break
            if hit is None:
                return False
            i, t, rel = hit
            w = free_reduce(w[:i] + inverse(rel[t:]) + w[i + t:])
        return True

    def equal(self, w1: Iterable[int], w2: Iterable[int]) -> bool:
        return self.is_trivial(concat(w1, inverse(tuple(w2))))

    # ------------------------------------------------------------------
    # conjugacy machinery
    #
    # All cyclic-word routines track a conjugator ``c`` with the invariant
    # ``original = c * current * c^-1`` (equality in the group), so canonical
    # forms come with an explicit change of base point.

    def _reduce_cyclic(self, core: Sequence[int], conj: Sequence[int]) -> tuple[Word, Word]:
        """Shrink a cyclic word until no cyclic subword exceeds half the relator."""
        core = free_reduce(core)
        core, peel = cyclic_reduce(core)
        conj = concat(conj, peel)
        if self.is_free:
            return core, tuple(conj)
        changed = True
        while changed and core:
            changed = False
            n = len(core)
            doubled = core + core
            for i in range(n):
                t, rel = self._longest_match(doubled, i, min(len(self.relator), n))
                if t > self._half:
                    conj = concat(conj, core[:i])
                    based = doubled[i:i + n]
                    core = free_reduce(inverse(rel[t:]) + based[t:])
                    core, peel = cyclic_reduce(core)
                    conj = concat(conj, peel)
                    changed = True
                    break
        return core, tuple(conj)

    def _cyclic_orbit(self, word: Iterable[int]) -> dict[Word, Word]:
        """All minimal cyclic words of the conjugacy class, with conjugators.

        Returns a map ``v -> c`` with ``word = c * v * c^-1`` in the group.
        The orbit is closed under rotation and, in the closed case, under
        half-relator swaps; any swap that exposes a further reduction restarts
        the search from the shorter word, so the final orbit is genuinely
        minimal.
        """
        core, conj = self._reduce_cyclic(tuple(word), ())
        while True:
            if not core:
                return {(): conj}
            orbit: dict[Word, Word] = {core: conj}
            queue = deque([core])
            restart = None
            while queue and restart is None:
                w = queue.popleft()
                c = orbit[w]
                moves = [(w[1:] + w[:1], concat(c, w[:1]))]
                if not self.is_free:
                    for rel in self._starts.get(w[0], ()):
                        t = 1
                        cap = min(len(self.relator), len(w))
                        while t < cap and w[t] == rel[t]:
                            t += 1
                        if t < self._half:
                            continue
                        new = free_reduce(inverse(rel[t:]) + w[t:])
                        if t > self._half or len(new) < len(w) or (
                            len(new) >= 2 and new[0] == -new[-1]
                        ):
                            restart = self._reduce_cyclic(new, c)
                            break
                        moves.append((new, c))
                if restart is not None:
                    break
                for w2, c2 in moves:
                    if w2 not in orbit:
                        if len(orbit) >= self.orbit_cap:
                            raise ResourceLimit(
                                "conjugacy orbit exceeded cap",
                                {"orbit_cap": self.orbit_cap, "length": len(core)},
                            )
                        orbit[w2] = c2
                        queue.append(w2)
            if restart is None:
                return orbit
            core, conj = restart

    def reduced_cyclic(self, word: Iterable[int]) -> Word:
        """One minimal cyclic representative (cheap; no orbit search)."""
        core, _ = self._reduce_cyclic(tuple(word), ())
        return core

    def conjugacy_length(self, word: Iterable[int]) -> int:
        """Length of a minimal cyclic representative."""
        return len(self.reduced_cyclic(word))

    def canonical_cyclic(self, word: Iterable[int], unoriented: bool = False) -> Word:
        """Deterministic canonical form of the conjugacy class.

        Lexicographic-least word over the minimal cyclic orbit; with
        ``unoriented`` also over the orbit of the inverse.
        """
        w = tuple(word)
        key = (w, unoriented)
        cached = self._canon_cache.get(key)
        if cached is not None:
            return cached
        best = min(self._cyclic_orbit(w), key=word_key)
        if unoriented:
            alt = min(self._cyclic_orbit(inverse(w)), key=word_key)
            best = min(best, alt, key=word_key)
        if len(self._canon_cache) < 65536:
            self._canon_cache[key] = best
        return best

    def are_conjugate(self, w1: Iterable[int], w2: Iterable[int],
                      unoriented: bool = False) -> bool:
        w1, w2 = tuple(w1), tuple(w2)
        # inversion preserves minimal cyclic length, so this filter is
        # safe in both the oriented and unoriented senses
        if self.conjugacy_length(w1) != self.conjugacy_length(w2):
            return False
        return self.canonical_cyclic(w1, unoriented) == self.canonical_cyclic(w2, unoriented)

    def find_conjugator(self, w1: Iterable[int], w2: Iterable[int]) -> Word:
        """Word ``g`` with ``w1 = g * w2 * g^-1``; raises NotConjugate."""
        w1, w2 = tuple(w1), tuple(w2)
        orb1 = self._cyclic_orbit(w1)
        orb2 = self._cyclic_orbit(w2)
        common = min(orb1, key=word_key)
        if common not in orb2:
            raise NotConjugate("the words are not conjugate")
        g = concat(orb1[common], inverse(orb2[common]))
        if not self.is_trivial(concat(inverse(w1), conjugate(g, w2))):
            raise NotConjugate("conjugator verification failed")
        return g

    # ------------------------------------------------------------------
    # roots

    def primitive_root(self, word: Iterable[int]) -> tuple[Word, int]:
        """Primitive root and exponent: ``word = root ** exponent``.

        Scans the minimal cyclic orbit for literal periods; minimal cyclic
        words of a power are literal powers of minimal cyclic words of the
        root, so the maximal literal period over the orbit is the true
        exponent.  The returned pair verifies ``word = root**exponent`` in
        the group.
        """
        w = tuple(word)
        if self.is_trivial(w):
            raise TrivialElement("the trivial element has no primitive root")
        orbit = self._cyclic_orbit(w)
        best_k, best_root, best_conj = 1, None, None
        for v, c in orbit.items():
            n = len(v)
            for d in _divisors(n):
                if v == v[:d] * (n // d):
                    k = n // d
                    root = v[:d]
                    if k > best_k or best_root is None or (
                        k == best_k and word_key(root) < word_key(best_root)
                    ):
                        best_k, best_root, best_conj = k, root, c
                    break
        root = concat(best_conj, best_root, inverse(best_conj))
        assert self.equal(w, power(root, best_k))
        return root, best_k


def _divisors(n: int) -> list[int]:
    """Divisors of ``n`` in increasing order."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]
