"""Geodesic crossing counts from an explicit hyperbolic structure.

The closed orientable surface of genus h >= 2 is hyperbolized as the regular
4h-gon in the Poincare disk with the standard one-relator side pairing; the
generators act as SU(1,1) matrices and every free homotopy class of closed
curves contains a unique closed geodesic.  Surfaces with boundary embed in
the closed surface of genus g + b (handle generators map to themselves, each
boundary generator to a fresh handle commutator), which turns every curve
computation on a bounded surface into one on a closed surface.

Two distinct closed geodesics realize the geometric intersection number of
their classes, and a single closed geodesic realizes the self-intersection
number, so exact counts reduce to counting transversal crossings between
lifts in the universal cover: fix an axis of the first curve, enumerate the
fundamental tiles in a tube around one period window, and test every lift of
the second curve carried by those tiles.  Every sign or interval decision is
taken with an explicit safety margin; a decision inside its margin aborts
the attempt, and the caller retries with a shifted window and then in
increasing mpmath precision.  The ladder has never been observed to run out,
but if it does the failure is a loud ResourceLimit, never a silent guess.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import mpmath

from .errors import ResourceLimit, TrivialElement, UnknownLetter
from ._words import Word, free_reduce, inverse


class Ambiguous(Exception):
    """A numeric decision fell inside its safety margin; retry differently."""


# ---------------------------------------------------------------------------
# 2x2 complex matrices as nested tuples (works for both complex and mpc)


def _mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _inv(m):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return ((m[1][1] / det, -m[0][1] / det), (-m[1][0] / det, m[0][0] / det))


def _apply(m, z):
    return (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])


def _trace(m):
    return m[0][0] + m[1][1]


# ---------------------------------------------------------------------------
# arithmetic context: one code path for float and mpmath runs


class _Arith:
    def __init__(self, *, margin, mp=False):
        self.margin = margin
        self.mp = mp
        if mp:
            self.sqrt = mpmath.sqrt
            self.atanh = mpmath.atanh
            self.tanh = mpmath.tanh
            self.acosh = mpmath.acosh
            self.re = lambda z: (+z.real)
            self.im = lambda z: (+z.imag)
            self.conj = mpmath.conj
            self.to_c = mpmath.mpc
            self.one = mpmath.mpf(1)
        else:
            self.sqrt = lambda x: cmath.sqrt(x) if isinstance(x, complex) else math.sqrt(x)
            self.atanh = math.atanh
            self.tanh = math.tanh
            self.acosh = math.acosh
            self.re = lambda z: z.real
            self.im = lambda z: z.imag
            self.conj = lambda z: z.conjugate()
            self.to_c = complex
            self.one = 1.0

    def sure(self, value, what):
        """Return a value certified to sit outside the zero margin."""
        if abs(value) <= self.margin:
            raise Ambiguous(f"{what}: {value}")
        return value


# ---------------------------------------------------------------------------
# the side-paired polygon model of the closed group


def _polygon_vertices(arith, n):
    if arith.mp:
        radius = mpmath.acosh(1 / mpmath.tan(mpmath.pi / n) ** 2)
        r = mpmath.tanh(radius / 2)
        return radius, [r * mpmath.exp(1j * (2 * k + 1) * mpmath.pi / n)
                        for k in range(n)]
    radius = math.acosh(1.0 / math.tan(math.pi / n) ** 2)
    r = math.tanh(radius / 2.0)
    return radius, [r * cmath.exp(1j * (2 * k + 1) * math.pi / n)
                    for k in range(n)]


def _send_to_origin(arith, p):
    d = 1 / arith.sqrt(1 - abs(p) ** 2)
    dd = arith.to_c(d)
    return ((dd, -dd * p), (-dd * arith.conj(p), dd))


def _align_pair(arith, p, q):
    """Isometry with p -> 0 and q on the positive real axis."""
    t = _send_to_origin(arith, p)
    img = _apply(t, q)
    half = arith.sqrt(img / abs(img))
    return _mul(((1 / half, arith.to_c(0)), (arith.to_c(0), half)), t)


def _relator(h):
    rel = []
    for i in range(1, h + 1):
        rel.extend((2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)))
    return tuple(rel)


def _letter_matrices(arith, h):
    """Generator matrices of the closed genus-h group, plus polygon data."""
    n = 4 * h
    radius, verts = _polygon_vertices(arith, n)
    rel = _relator(h)
    side_of = {letter: k for k, letter in enumerate(rel)}
    mats = {}
    for x in range(1, 2 * h + 1):
        i, j = side_of[x], side_of[-x]
        # deck transformation across side i: carries the side labeled -x
        # onto the side labeled x with reversed boundary orientation
        deck = _mul(_inv(_align_pair(arith, verts[i], verts[(i + 1) % n])),
                    _align_pair(arith, verts[(j + 1) % n], verts[j]))
        # inverting the even (b-family) decks makes the letters satisfy the
        # standard surface relator when words are read left to right
        mats[x] = deck if x % 2 == 1 else _inv(deck)
    return radius, verts, rel, mats


@lru_cache(maxsize=None)
def _float_model(h):
    radius, verts, rel, mats = _letter_matrices(_Arith(margin=1e-9), h)
    m = ((1.0 + 0j, 0j), (0j, 1.0 + 0j))
    for letter in rel:
        m = _mul(m, mats[letter] if letter > 0 else _inv(mats[-letter]))
    err = min(max(abs(m[0][0] - 1), abs(m[0][1]), abs(m[1][0]), abs(m[1][1] - 1)),
              max(abs(m[0][0] + 1), abs(m[0][1]), abs(m[1][0]), abs(m[1][1] + 1)))
    if err > 1e-9:
        raise AssertionError(f"polygon side pairing broke the relator: {err}")
    return radius, verts, rel, mats


@lru_cache(maxsize=None)
def _mp_model(h, dps):
    with mpmath.workdps(dps):
        return _letter_matrices(_Arith(margin=0, mp=True), h)


def _closed_word(genus, boundary, word):
    """Rewrite a word of the (genus, boundary) group in closed-group letters."""
    rank = 2 * genus + (boundary - 1 if boundary >= 1 else 0)
    out = []
    for x in word:
        ax = abs(x)
        if ax == 0 or ax > rank:
            raise UnknownLetter(f"letter {x} out of range for rank {rank}")
        if ax <= 2 * genus:
            sub = (ax,)
        else:
            j = ax - 2 * genus
            a, b = 2 * (genus + j) - 1, 2 * (genus + j)
            sub = (a, b, -a, -b)
        out.extend(sub if x > 0 else inverse(sub))
    return free_reduce(out)


# ---------------------------------------------------------------------------
# geometry helpers on the disk (all margin-checked through _Arith)


def _axis_ends(arith, m):
    """(repelling, attracting) circle fixed points of a hyperbolic matrix."""
    a, b = m[0][0], m[0][1]
    c, d = m[1][0], m[1][1]
    disc = arith.sqrt(arith.to_c((d - a) * (d - a) + 4 * b * c))
    ends = []
    for z in (((a - d) + disc) / (2 * c), ((a - d) - disc) / (2 * c)):
        if abs(abs(z) - 1) > 1e-4:
            raise Ambiguous(f"axis end off the circle: {abs(z)}")
        z = z / abs(z)
        deriv = abs(c * z + d)
        arith.sure(deriv - 1, "neutral axis end")
        ends.append((z, deriv))
    (za, da), (zb, db) = ends
    return (zb, za) if da > 1 else (za, zb)


def _ortho_center(arith, z1, z2):
    """Euclidean center of the circle through z1, z2 orthogonal to the unit
    circle, or None when the two points span a diameter."""
    x1, y1 = arith.re(z1), arith.im(z1)
    x2, y2 = arith.re(z2), arith.im(z2)
    det = x1 * y2 - x2 * y1
    if abs(det) <= arith.margin * 1e-3:
        return None
    r1 = (1 + x1 * x1 + y1 * y1) / 2
    r2 = (1 + x2 * x2 + y2 * y2) / 2
    return ((r1 * y2 - r2 * y1) / det, (x1 * r2 - x2 * r1) / det)


def _align_axis(arith, rep, att):
    """Isometry taking the geodesic (rep, att) to the real diameter with the
    attracting end at +1."""
    cen = _ortho_center(arith, rep, att)
    if cen is None:
        mid = arith.to_c(0)
    else:
        cx, cy = cen
        norm = arith.sqrt(cx * cx + cy * cy)
        rho = arith.sqrt(arith.sure(cx * cx + cy * cy - 1, "tangent axis"))
        mid = arith.to_c(cx, cy) if arith.mp else complex(cx, cy)
        mid = mid * ((norm - rho) / norm)
    arith.sure(1 - abs(mid) ** 2, "axis midpoint on the circle")
    w = _send_to_origin(arith, mid)
    img = _apply(w, att)
    half = arith.sqrt(img / abs(img))
    w = _mul(((1 / half, arith.to_c(0)), (arith.to_c(0), half)), w)
    if arith.re(_apply(w, att)) < 0:
        w = _mul(((arith.to_c(1j), arith.to_c(0)), (arith.to_c(0), arith.to_c(-1j))), w)
    return w


def _slide(arith, dist):
    """Isometry translating the real diameter by a hyperbolic distance."""
    t = arith.to_c(arith.tanh(dist / 2))
    return ((arith.to_c(1), t), (t, arith.to_c(1)))


def _diameter_crossing(arith, z1, z2, window):
    """Signed parameter where the geodesic (z1, z2) meets the real diameter,
    None when it provably stays on one side or provably misses the window
    [0, window]; Ambiguous otherwise."""
    s1 = arith.sure(arith.im(z1), "lift end on the real axis")
    s2 = arith.sure(arith.im(z2), "lift end on the real axis")
    if (s1 > 0) == (s2 > 0):
        return None
    cen = _ortho_center(arith, z1, z2)
    if cen is None:
        return arith.one * 0
    c1 = cen[0]
    disc = c1 * c1 - 1
    if abs(disc) <= arith.margin:
        # near-tangent: |c1| is within the margin of 1, so any real crossing
        # sits at |parameter| >= 2 atanh(1 / (|c1| + sqrt(margin))), and when
        # that clears the window the ambiguity cannot change the count
        bound = 2 * arith.atanh(1 / (abs(c1) + arith.sqrt(arith.margin)))
        if bound > window + 1:
            return None
        raise Ambiguous(f"near-tangent crossing: {disc}")
    if disc < 0:
        raise Ambiguous("ends separate but no crossing found")
    mag = 1 / (abs(c1) + arith.sqrt(disc))
    return 2 * arith.atanh(mag if c1 > 0 else -mag)


def _foot(arith, z):
    """Parameter of the orthogonal projection of z onto the real diameter."""
    x, y = arith.re(z), arith.im(z)
    if abs(x) < 1e-30:
        return arith.one * 0
    tot = 1 + x * x + y * y
    root = (tot - arith.sqrt(tot * tot - 4 * x * x)) / (2 * x)
    cap = arith.one - arith.one * 1e-15
    return 2 * arith.atanh(min(max(root, -cap), cap))


def _dist_to_real(arith, z, s):
    """Hyperbolic distance from z to the real point tanh(s/2)."""
    x, y = arith.re(z), arith.im(z)
    gap = 1 - x * x - y * y
    if gap <= 1e-200:
        return arith.one * 1e9
    p = arith.tanh(s / 2)
    d2 = (x - p) * (x - p) + y * y
    return arith.acosh(1 + 2 * d2 / (gap * (1 - p * p)))


def _dist_to_window(arith, z, hi):
    t = min(max(_foot(arith, z), arith.one * 0), hi)
    return _dist_to_real(arith, z, t)


# ---------------------------------------------------------------------------
# crossing counter


class _Counter:
    """Counts transversal crossings of lifts inside one axis window."""

    def __init__(self, h, arith):
        self.arith = arith
        self.h = h
        if arith.mp:
            radius, verts, rel, mats = _mp_model(h, mpmath.mp.dps)
        else:
            radius, verts, rel, mats = _float_model(h)
        self.radius = radius
        ident = ((arith.to_c(1), arith.to_c(0)), (arith.to_c(0), arith.to_c(1)))
        self.identity = ident
        self.letters = {}
        for x, m in mats.items():
            self.letters[x] = m
            self.letters[-x] = _inv(m)
        # stepping across polygon side k multiplies by the raw deck of the
        # letter carried by that side (undoing the b-family inversion)
        side_of = {letter: k for k, letter in enumerate(rel)}
        self.steps = []
        for k, letter in enumerate(rel):
            x = abs(letter)
            raw = mats[x] if x % 2 == 1 else _inv(mats[x])
            self.steps.append(raw if side_of[x] == k else _inv(raw))
        self.sides = []
        for k in range(len(rel)):
            cen = _ortho_center(arith, verts[k], verts[(k + 1) % len(rel)])
            if cen is None:
                raise Ambiguous("degenerate polygon side")
            self.sides.append(cen)

    def word_matrix(self, closed):
        m = self.identity
        for letter in closed:
            m = _mul(m, self.letters[letter])
        return m

    def _deepest_violation(self, z):
        x, y = self.arith.re(z), self.arith.im(z)
        worst, pick = 0, None
        for k, (cx, cy) in enumerate(self.sides):
            gap = (x - cx) ** 2 + (y - cy) ** 2 - (cx * cx + cy * cy - 1)
            if gap < worst:
                worst, pick = gap, k
        return pick

    def home_tile(self, p):
        """Deck matrix g with p inside g times the polygon, by greedy walk."""
        g = self.identity
        for _ in range(6000):
            k = self._deepest_violation(_apply(_inv(g), p))
            if k is None:
                return g
            g = _mul(g, self.steps[k])
        raise Ambiguous("tile walk did not settle")

    def _tile_key(self, aligned, g):
        """Axis-adapted rounded coordinates naming a tile uniquely."""
        arith = self.arith
        z = _apply(aligned, _apply(g, arith.to_c(0)))
        t = _foot(arith, z)
        d = _dist_to_real(arith, z, t)
        if arith.im(z) < 0:
            d = -d
        return (round(float(t), 3), round(float(d), 3))

    def window_tiles(self, aligned, length, pad):
        """Deck matrices of all tiles within reach of the aligned window."""
        arith = self.arith
        start = _apply(_inv(aligned), arith.to_c(0))
        g0 = self.home_tile(start)
        seen = {self._tile_key(aligned, g0)}
        out = [g0]
        queue = [g0]
        limit = self.radius + pad
        while queue:
            g = queue.pop()
            for mv in self.steps:
                nxt = _mul(g, mv)
                center = _apply(aligned, _apply(nxt, arith.to_c(0)))
                if _dist_to_window(arith, center, length) > limit:
                    continue
                key = self._tile_key(aligned, nxt)
                if key in seen:
                    continue
                seen.add(key)
                out.append(nxt)
                queue.append(nxt)
            if len(out) > 20000:
                raise Ambiguous("tile set around the window exploded")
        return out

    def _fixes_line(self, m, rep, att):
        """Does the deck element m map the axis (rep, att) to itself?"""
        gap = max(abs(_apply(m, rep) - rep), abs(_apply(m, att) - att))
        lo = 1e-25 if self.arith.mp else 1e-8
        hi = 1e-12 if self.arith.mp else 1e-4
        if gap < lo:
            return True
        if gap > hi:
            return False
        raise Ambiguous(f"line identity unclear at gap {gap}")

    def count(self, word_u, word_v, *, same_curve, offset=0.0):
        arith = self.arith
        mu = self.word_matrix(word_u)
        mv = self.word_matrix(word_v)
        tr_u = arith.re(_trace(mu))
        tr_v = arith.re(_trace(mv))
        arith.sure(abs(tr_u) - 2, "first class is not hyperbolic")
        arith.sure(abs(tr_v) - 2, "second class is not hyperbolic")
        len_u = 2 * arith.acosh(abs(tr_u) / 2)
        len_v = 2 * arith.acosh(abs(tr_v) / 2)
        rep_u, att_u = _axis_ends(arith, mu)
        rep_v, att_v = _axis_ends(arith, mv)
        w = _align_axis(arith, rep_u, att_u)
        if offset:
            w = _mul(_slide(arith, arith.one * (-offset)), w)
        wv = _align_axis(arith, rep_v, att_v)
        tiles_u = self.window_tiles(w, len_u, 0.25)
        tiles_v = self.window_tiles(wv, len_v, 0.25)
        inv_v = [_inv(t) for t in tiles_v]
        hits = []
        for g in tiles_u:
            for t_inv in inv_v:
                trans = _mul(g, t_inv)
                e1 = _apply(w, _apply(trans, rep_v))
                e2 = _apply(w, _apply(trans, att_v))
                s1, s2 = arith.im(e1), arith.im(e2)
                if abs(s1) > arith.margin and abs(s2) > arith.margin and (
                    (s1 > 0) == (s2 > 0)
                ):
                    continue  # both ends safely on one side: no crossing
                if same_curve and self._fixes_line(trans, rep_v, att_v):
                    continue  # the central lift itself, not a crossing
                param = _diameter_crossing(arith, e1, e2, len_u)
                if param is None:
                    continue
                arith.sure(param, "crossing at the window start")
                arith.sure(param - len_u, "crossing at the window end")
                if 0 < param < len_u:
                    hits.append(trans)
        # several transporters can name one geodesic line; keep one each
        kept = []
        for trans in hits:
            if not any(self._fixes_line(_mul(_inv(other), trans), rep_v, att_v)
                       for other in kept):
                kept.append(trans)
        return len(kept)


_float_counters: dict[int, _Counter] = {}


def _count_with_retries(genus, boundary, w1, w2, *, same_curve):
    u = _closed_word(genus, boundary, w1)
    v = _closed_word(genus, boundary, w2)
    if not u or not v:
        raise TrivialElement("geodesic counts need non-trivial classes")
    h = genus + boundary
    if h not in _float_counters:
        _float_counters[h] = _Counter(h, _Arith(margin=1e-5))
    for offset in (0.0, 0.2913, 0.7817):
        try:
            return _float_counters[h].count(u, v, same_curve=same_curve,
                                            offset=offset)
        except Ambiguous:
            continue
    for dps, margin, offsets in (
        (60, "1e-20", (0.171, 0.6133)),
        (120, "1e-45", (0.3141, 0.7719)),
    ):
        with mpmath.workdps(dps):
            counter = _Counter(h, _Arith(margin=mpmath.mpf(margin), mp=True))
            for offset in offsets:
                try:
                    return counter.count(u, v, same_curve=same_curve,
                                         offset=offset)
                except Ambiguous:
                    continue
    raise ResourceLimit(f"crossing count undecided for {w1} vs {w2}",
                        {"stage": "precision ladder", "dps": 120})


def pair_count(genus: int, boundary: int, w1: Word, w2: Word) -> int:
    """Crossings of the geodesics of two distinct primitive unoriented
    classes: the geometric intersection number."""
    return _count_with_retries(genus, boundary, w1, w2, same_curve=False)


def self_count(genus: int, boundary: int, w: Word) -> int:
    """Self-crossings of the geodesic of a primitive class: crossings of the
    central lift with every other lift, halved."""
    doubled = _count_with_retries(genus, boundary, w, w, same_curve=True)
    if doubled % 2:
        raise AssertionError(f"odd lift crossing total {doubled}")
    return doubled // 2
