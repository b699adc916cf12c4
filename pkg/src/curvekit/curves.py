"""Curves on a marked surface, in three interchangeable representations.

A free-homotopy class can be carried as a canonical cyclic word in the
surface-group generators (:class:`CyclicWord`), as the crossing sequence of a
representative transverse to the triangulation (:class:`NormalCurve`), or --
for simple multicurves -- as the vector of crossing counts per edge
(:class:`AdmissibleVector`).  This module converts between the three, reduces
transverse representatives to minimal position, rebuilds embedded multicurves
from admissible vectors, and enumerates admissible vectors by norm.

Transverse bookkeeping: an arc running through triangle ``t``, entering
across side ``i`` and leaving across side ``j``, is the triple ``(t, i, j)``;
a component is a cyclic tuple of such triples whose consecutive sides are
glued.  Two local moves drive all reductions.  An arc with ``i == j`` can be
pushed across that edge into the neighbouring triangle, erasing two
crossings; iterating this yields normal form.  A strand running around an
interior vertex can be slid across it, trading its crossings for the
complementary fan of that vertex; searching level plateaus of this move
breadth-first and applying every strict reduction found yields minimal
position, and the minimal crossing count is the combinatorial length of the
class.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from ._words import Word, concat, free_reduce, inverse
from .errors import NotAdmissible, UnknownLetter, VertexCollision
from .group_core import GroupPresentation
from .surface_model import MarkedSurface, Side, Step, Triangulation

Crossing = tuple[int, int, int]

_DEFAULT_PLATEAU_CAP = 4096


# ---------------------------------------------------------------------------
# cyclic words


@dataclass(frozen=True)
class CyclicWord:
    """Canonical cyclically reduced word of a free-homotopy class.

    ``letters`` is the lexicographically least rotation of the fully reduced
    cyclic word, taken over inversion as well when ``unoriented`` is set.
    Build instances through :func:`cyclic_reduce`, which establishes the
    canonical form; the class itself stores whatever it is given.
    """

    letters: Word
    unoriented: bool = False

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def format(self, group: GroupPresentation) -> str:
        return group.format(self.letters)


def cyclic_reduce(
    word: "str | Iterable[int] | CyclicWord",
    group: GroupPresentation,
    *,
    unoriented: bool = False,
) -> CyclicWord:
    """Canonical cyclic form of a raw word (text or signed letters).

    The output is freely and cyclically reduced, shortened against the
    relator on a closed surface, and rotated to its lexicographic least
    form -- identical for any two conjugate inputs, and also for inverse
    inputs when ``unoriented`` is set.
    """
    if isinstance(word, CyclicWord):
        w: Word = word.letters
    elif isinstance(word, str):
        w = group.parse(word)
    else:
        w = tuple(word)
    return CyclicWord(group.canonical_cyclic(w, unoriented), unoriented)


# ---------------------------------------------------------------------------
# normal curves


@dataclass(frozen=True)
class NormalCurve:
    """A multicurve transverse to the triangulation.

    Each component is a cyclic tuple of ``(triangle, entry side, exit side)``
    triples with every consecutive pair glued exit-to-entry; normality means
    no triple enters and leaves through the same side.
    """

    components: tuple[tuple[Crossing, ...], ...]

    @property
    def crossing_count(self) -> int:
        return sum(len(comp) for comp in self.components)

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def edge_counts(self, tri: Triangulation) -> tuple[int, ...]:
        """Crossings per edge, indexed by edge id."""
        counts = [0] * tri.num_edges
        for comp in self.components:
            for t, _entry, exit_ in comp:
                counts[tri.edge_of_side[(t, exit_)]] += 1
        return tuple(counts)

    def validate(self, tri: Triangulation) -> None:
        """Check the gluing chain and normality against a triangulation."""
        for comp in self.components:
            _check_chain(comp, tri)
            for t, i, j in comp:
                if i == j:
                    raise VertexCollision(
                        f"arc in triangle {t} enters and leaves through side {i}"
                    )


def _check_chain(comp: Sequence[Crossing], tri: Triangulation) -> None:
    if not comp:
        raise VertexCollision("empty component in crossing sequence")
    for k, (t, i, j) in enumerate(comp):
        if not (0 <= t < tri.num_triangles and 0 <= i <= 2 and 0 <= j <= 2):
            raise VertexCollision(f"crossing {(t, i, j)} is not inside the surface")
        partner = tri.glue.get((t, j))
        if partner is None:
            raise VertexCollision(
                f"crossing sequence leaves the surface through boundary side {(t, j)}"
            )
        nt, ni, _ = comp[(k + 1) % len(comp)]
        if partner != (nt, ni):
            raise VertexCollision(
                f"consecutive crossings {comp[k]} and {comp[(k + 1) % len(comp)]}"
                " are not glued side to side"
            )


def _canon_cycle(comp: Sequence[Crossing]) -> tuple[Crossing, ...]:
    """Lexicographically least rotation; orientation is kept."""
    tup = tuple(comp)
    n = len(tup)
    best = tup
    for s in range(1, n):
        rot = tup[s:] + tup[:s]
        if rot < best:
            best = rot
    return best


def _canon_component(comp: Sequence[Crossing], oriented: bool) -> tuple[Crossing, ...]:
    fwd = _canon_cycle(comp)
    if oriented:
        return fwd
    rev = _canon_cycle([(t, j, i) for t, i, j in reversed(comp)])
    return min(fwd, rev)


def _canon_curve(comps: Iterable[Sequence[Crossing]], *, oriented: bool) -> NormalCurve:
    cleaned = sorted(_canon_component(c, oriented) for c in comps if c)
    return NormalCurve(tuple(cleaned))


def _coerce_components(path) -> list[list[Crossing]]:
    if isinstance(path, NormalCurve):
        return [list(comp) for comp in path.components]
    items = list(path)
    if not items:
        return []
    first = items[0]
    if len(first) == 3 and all(isinstance(x, int) for x in first):
        return [[tuple(c) for c in items]]
    return [[tuple(c) for c in comp] for comp in items]


def _r1_component(arcs: list[Crossing], tri: Triangulation) -> list[Crossing]:
    """Erase same-side arcs by pushing them across their edge."""
    while arcs:
        n = len(arcs)
        k = next((k for k in range(n) if arcs[k][1] == arcs[k][2]), None)
        if k is None:
            return arcs
        if n == 1:
            return []
        p, q = (k - 1) % n, (k + 1) % n
        if p == q:
            # a two-arc component closing up across one edge: the survivor
            # is degenerate too and vanishes on the next pass
            arcs = [arcs[p]]
            continue
        assert arcs[p][0] == arcs[q][0], "neighbours of a degenerate arc must meet"
        merged = (arcs[p][0], arcs[p][1], arcs[q][2])
        tail = []
        i = (q + 1) % n
        while i != p:
            tail.append(arcs[i])
            i = (i + 1) % n
        arcs = tail + [merged]
    return arcs


def normalize(path, tri: Triangulation) -> NormalCurve:
    """Homotope a transversal crossing sequence into normal form.

    ``path`` is one component (a sequence of ``(triangle, entry, exit)``
    triples), a sequence of components, or a :class:`NormalCurve`.  Arcs that
    enter and leave a triangle through the same side are pushed across that
    edge until none remain; the crossing count never increases, and drops by
    two at every push.  Raises :class:`VertexCollision` when the input does
    not encode a closed curve transverse to the edges.
    """
    comps = _coerce_components(path)
    for comp in comps:
        _check_chain(comp, tri)
    reduced = [_r1_component(comp, tri) for comp in comps]
    return _canon_curve(reduced, oriented=True)


# ---------------------------------------------------------------------------
# corner walks around a vertex


def _corner_walk(
    tri: Triangulation,
    a: tuple[int, int],
    b: tuple[int, int],
    direction: int,
) -> list[Side] | None:
    """Sides crossed when rotating from corner ``a`` to corner ``b``.

    Rotation direction ``+1`` hops across the side preceding the corner,
    ``-1`` across the side starting at it.  Returns ``None`` when the walk
    falls off the boundary before reaching ``b``.
    """
    out: list[Side] = []
    cur = a
    for _ in range(3 * tri.num_triangles + 1):
        if cur == b:
            return out
        t, c = cur
        s = (t, (c + 2) % 3) if direction > 0 else (t, c)
        nxt = tri.glue.get(s)
        if nxt is None:
            return None
        out.append(s)
        cur = nxt if direction > 0 else (nxt[0], (nxt[1] + 1) % 3)
    raise VertexCollision(f"corner walk from {a} never reaches {b}")


def _fan_walk(tri: Triangulation, a: tuple[int, int], b: tuple[int, int]) -> list[Side]:
    """Sides crossed by a strand sliding around the common vertex of two
    corners, in whichever rotation direction stays inside the surface."""
    if a == b:
        return []
    for direction in (1, -1):
        walk = _corner_walk(tri, a, b, direction)
        if walk is not None:
            return walk
    raise VertexCollision(f"corners {a} and {b} are separated by the boundary")


def _arcs_from_outs(tri: Triangulation, outs: Sequence[Side]) -> list[Crossing]:
    """Arc triples of the cyclic crossing sequence given by exit sides."""
    comp: list[Crossing] = []
    for k in range(len(outs)):
        enter = tri.glue[outs[k - 1]]
        texit = outs[k]
        assert enter[0] == texit[0], "crossing chain broken"
        comp.append((enter[0], enter[1], texit[1]))
    return comp


# ---------------------------------------------------------------------------
# words -> transverse curves


def _cancel_steps(steps: list[Step]) -> list[Step]:
    """Erase backtracking in an edge path, including across the wrap."""
    out: list[Step] = []
    for st in steps:
        if out and out[-1][0] == st[0] and out[-1][1] == -st[1]:
            out.pop()
        else:
            out.append(st)
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out.pop()
        out.pop(0)
    return out


def _pushoff_outs(tri: Triangulation, steps: Sequence[Step]) -> list[Side]:
    """Exit sides of a transversal pushoff of a closed edge path.

    Each step travels parallel to its edge inside an adjacent triangle (the
    side's own triangle going forward, the glued one going backward, and the
    inward side along the boundary); between steps the strand slides around
    the junction vertex through the fan of corners.
    """
    recs: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for (t, i), sign in steps:
        if sign == 1:
            recs.append(((t, i), (t, (i + 1) % 3)))
        else:
            part = tri.glue.get((t, i))
            if part is not None:
                t2, i2 = part
                recs.append(((t2, i2), (t2, (i2 + 1) % 3)))
            else:
                recs.append(((t, (i + 1) % 3), (t, i)))
    outs: list[Side] = []
    for k in range(len(recs)):
        arr = recs[k][1]
        dep = recs[(k + 1) % len(recs)][0]
        va = tri.triangles[arr[0]][arr[1]]
        vd = tri.triangles[dep[0]][dep[1]]
        assert va == vd, "pushoff of a broken edge path"
        outs.extend(_fan_walk(tri, arr, dep))
    return outs


def word_to_normal(
    w: "str | Iterable[int] | CyclicWord", ms: MarkedSurface
) -> NormalCurve:
    """Transverse representative of a word's free-homotopy class.

    The word is spelled as a closed edge path through the marked generator
    loops, pushed off the one-skeleton, and normalized; conjugate inputs give
    the identical curve.  A trivial word gives the empty curve.
    """
    cw = w if isinstance(w, CyclicWord) else cyclic_reduce(w, ms.group)
    if not cw.letters:
        return NormalCurve(())
    steps: list[Step] = []
    for x in cw.letters:
        loop = ms.generator_loops.get(abs(x))
        if loop is None:
            raise UnknownLetter(
                f"letter {x} is not a generator on {ms.sig.format()}")
        if x > 0:
            steps.extend(loop)
        else:
            steps.extend((s, -sg) for s, sg in reversed(loop))
    steps = _cancel_steps(steps)
    assert steps, "an essential class cannot spell a fully backtracking path"
    outs = _pushoff_outs(ms.tri, steps)
    assert outs, "an essential class cannot push into a single triangle"
    return normalize([_arcs_from_outs(ms.tri, outs)], ms.tri)


# ---------------------------------------------------------------------------
# transverse curves -> words


def _slot_corner(tri: Triangulation, t: int, i: int) -> int:
    """Corner marking the reference end of the edge under side ``(t, i)``.

    Every crossing point of an edge is slid to the edge end that sits at the
    start corner of the edge's first-seen side; gluings are anti-parallel, so
    from the partner side that end is the side's far corner.
    """
    if tri.edge_sides[tri.edge_of_side[(t, i)]][0] == (t, i):
        return i
    return (i + 1) % 3


def _component_word(ms: MarkedSurface, comp: Sequence[Crossing]) -> Word:
    """Class of one component, read off by sliding every crossing point to
    its edge's reference end and walking the triangle sides in between."""
    tri = ms.tri
    parts: list[Word] = []
    for t, i, j in comp:
        ci = _slot_corner(tri, t, i)
        cj = _slot_corner(tri, t, j)
        if ci == cj:
            continue
        if cj == (ci + 1) % 3:
            parts.append(ms.labels[(t, ci)])
        else:
            parts.append(inverse(ms.labels[(t, cj)]))
    return concat(*parts) if parts else ()


def normal_to_word(
    nc: NormalCurve, ms: MarkedSurface, *, unoriented: bool = False
) -> CyclicWord:
    """Canonical word of a connected normal curve (empty curve, empty word)."""
    if not nc.components:
        return CyclicWord((), unoriented)
    if len(nc.components) > 1:
        raise ValueError(
            f"normal curve has {len(nc.components)} components; use component_words"
        )
    word = _component_word(ms, nc.components[0])
    return cyclic_reduce(word, ms.group, unoriented=unoriented)


def component_words(
    nc: NormalCurve, ms: MarkedSurface, *, unoriented: bool = False
) -> tuple[CyclicWord, ...]:
    """Canonical word of every component, in component order."""
    return tuple(
        cyclic_reduce(_component_word(ms, comp), ms.group, unoriented=unoriented)
        for comp in nc.components
    )


# ---------------------------------------------------------------------------
# minimal position


def _arc_corner(i: int, j: int) -> int:
    """Corner cut off by a normal arc entering side ``i`` and leaving ``j``."""
    return (i + 1) % 3 if j == (i + 1) % 3 else i


def _vertex_aux(tri: Triangulation) -> tuple[set[int], list[int]]:
    """Boundary vertex set and per-vertex corner counts."""
    boundary: set[int] = set()
    for s in tri.boundary:
        u, v = tri.side_ends(s)
        boundary.add(u)
        boundary.add(v)
    counts = [0] * tri.num_vertices
    for t, tr in enumerate(tri.triangles):
        for v in tr:
            counts[v] += 1
    return boundary, counts


def _rotate_corner(
    tri: Triangulation, corner: tuple[int, int], direction: int
) -> tuple[int, int] | None:
    t, c = corner
    s = (t, (c + 2) % 3) if direction > 0 else (t, c)
    nxt = tri.glue.get(s)
    if nxt is None:
        return None
    return nxt if direction > 0 else (nxt[0], (nxt[1] + 1) % 3)


def _slide_results(
    tri: Triangulation,
    comp: tuple[Crossing, ...],
    boundary_vertices: set[int],
    corner_counts: list[int],
) -> Iterator[tuple[Crossing, ...]]:
    """Non-increasing vertex slides of one component, reduced and canonical.

    A maximal block of consecutive arcs cutting corners at one interior
    vertex is reroutable through the complementary fan of that vertex; the
    crossing count changes by the fan-size difference, and only moves that
    do not increase it are produced.  A component whose arcs all circle one
    vertex bounds a disk around it and is reported as the empty component.
    """
    n = len(comp)
    cuts = []
    for t, i, j in comp:
        c = _arc_corner(i, j)
        cuts.append(tri.triangles[t][c])
    starts = [k for k in range(n) if cuts[k] != cuts[k - 1]]
    if not starts:
        if cuts[0] not in boundary_vertices:
            yield ()
        return
    outs = [(t, j) for t, _i, j in comp]
    for s in starts:
        v = cuts[s]
        if v in boundary_vertices:
            continue
        r = 1
        while cuts[(s + r) % n] == v:
            r += 1
        if corner_counts[v] - 2 * r - 2 > 0:
            continue
        first_t, first_i, first_j = comp[s]
        k1 = (first_t, _arc_corner(first_i, first_j))
        d = 1 if first_i == k1[1] else -1
        last_t, last_i, last_j = comp[(s + r - 1) % n]
        kr = (last_t, _arc_corner(last_i, last_j))
        k0 = _rotate_corner(tri, k1, -d)
        kend = _rotate_corner(tri, kr, d)
        assert k0 is not None and kend is not None, "interior fan left the surface"
        new_seg = _corner_walk(tri, k0, kend, -d)
        if new_seg is None:
            continue
        lo = (s - 1) % n
        rotated = outs[lo:] + outs[:lo]
        old_seg = _corner_walk(tri, k0, kend, d)
        assert old_seg == rotated[: r + 1], "fan block does not match its corner walk"
        new_outs = new_seg + rotated[r + 1 :]
        if not new_outs:
            yield ()
            continue
        arcs = _r1_component(_arcs_from_outs(tri, new_outs), tri)
        yield _canon_cycle(arcs) if arcs else ()


def _minimize_component(
    tri: Triangulation,
    comp: Sequence[Crossing],
    cap: int,
    aux: tuple[set[int], list[int]],
) -> tuple[Crossing, ...]:
    """Fewest-crossing representative of one component's class.

    Breadth-first search over crossing-count plateaus of the vertex-slide
    move, restarting from any strictly shorter position found; ``cap`` bounds
    the number of plateau states explored per level.
    """
    boundary_vertices, corner_counts = aux
    current = _r1_component(list(comp), tri)
    while current:
        start = _canon_cycle(current)
        found = None
        seen = {start}
        queue = deque([start])
        while queue and found is None:
            cur = queue.popleft()
            for nxt in _slide_results(tri, cur, boundary_vertices, corner_counts):
                if len(nxt) < len(cur):
                    found = nxt
                    break
                if nxt not in seen and len(seen) < cap:
                    seen.add(nxt)
                    queue.append(nxt)
        if found is None:
            return start
        current = list(found)
    return ()


def tighten(
    c: "str | Iterable[int] | CyclicWord | NormalCurve",
    ms: MarkedSurface,
    *,
    cap: int = _DEFAULT_PLATEAU_CAP,
) -> NormalCurve:
    """Minimal-position representative: fewest crossings in the class.

    Accepts a word (anything :func:`cyclic_reduce` takes) or a normal curve;
    components are minimized independently.  Results for word input are
    cached on the marked surface.
    """
    if isinstance(c, NormalCurve):
        nc = c
        key = ("tighten", nc, cap)
    else:
        cw = c if isinstance(c, CyclicWord) else cyclic_reduce(c, ms.group)
        key = ("tighten", cw.letters, cap)
        cached = ms._curve_cache.get(key)
        if cached is not None:
            return cached
        nc = word_to_normal(cw, ms)
    aux = _vertex_aux(ms.tri)
    comps = [_minimize_component(ms.tri, comp, cap, aux) for comp in nc.components]
    out = _canon_curve(comps, oriented=True)
    ms._curve_cache[key] = out
    return out


def t_length(
    c: "str | Iterable[int] | CyclicWord | NormalCurve",
    ms: MarkedSurface,
    *,
    cap: int = _DEFAULT_PLATEAU_CAP,
) -> int:
    """Fewest crossings with the triangulation over the free-homotopy class.

    Conjugate words give equal values by construction, since the input is
    canonicalized before any geometry happens; the empty class has length 0.
    """
    return tighten(c, ms, cap=cap).crossing_count


# ---------------------------------------------------------------------------
# admissible vectors


@dataclass(frozen=True)
class AdmissibleVector:
    """Edge crossing counts of a simple multicurve, indexed by edge id.

    Around every triangle the three counts have even sum and satisfy the
    triangle inequalities; :func:`admissible` checks this, and
    :func:`reconstruct` turns the vector back into the embedded multicurve.
    """

    m: tuple[int, ...]

    @property
    def norm(self) -> int:
        return sum(self.m)

    def to_json(self) -> str:
        return json.dumps({"m": list(self.m)}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "AdmissibleVector":
        data = json.loads(text)
        if not isinstance(data, dict) or "m" not in data:
            raise ValueError('expected an object of the form {"m": [...]}')
        return cls(tuple(int(x) for x in data["m"]))


def admissible(m: Iterable[int], tri: Triangulation) -> AdmissibleVector:
    """Validate a vector of edge weights; raises :class:`NotAdmissible`."""
    vec = tuple(int(x) for x in m)
    if len(vec) != tri.num_edges:
        raise NotAdmissible(
            f"expected {tri.num_edges} edge weights, got {len(vec)}"
        )
    if any(x < 0 for x in vec):
        raise NotAdmissible("edge weights must be non-negative")
    for t in range(tri.num_triangles):
        w = [vec[tri.edge_of_side[(t, i)]] for i in range(3)]
        if sum(w) % 2:
            raise NotAdmissible(f"odd crossing total around triangle {t}")
        for i in range(3):
            if w[i] > w[(i + 1) % 3] + w[(i + 2) % 3]:
                raise NotAdmissible(
                    f"triangle inequality fails at triangle {t}: {tuple(w)}"
                )
    return AdmissibleVector(vec)


def triangle_arc_counts(m0: int, m1: int, m2: int) -> tuple[int, int, int]:
    """Arc counts of the unique disjoint pattern in one triangle.

    Entry ``c`` counts the arcs separating corner ``c`` from the opposite
    side, given ``m0, m1, m2`` crossings on sides 0, 1, 2; the total is half
    the weight sum.  Raises :class:`NotAdmissible` when no pattern exists.
    """
    w = (m0, m1, m2)
    if min(w) < 0 or sum(w) % 2:
        raise NotAdmissible(f"no arc pattern for weights {w}")
    for i in range(3):
        if w[i] > w[(i + 1) % 3] + w[(i + 2) % 3]:
            raise NotAdmissible(f"no arc pattern for weights {w}")
    return tuple((w[c] + w[(c + 2) % 3] - w[(c + 1) % 3]) // 2 for c in range(3))


def reconstruct(
    m: "AdmissibleVector | Iterable[int]",
    surface: "MarkedSurface | Triangulation",
) -> NormalCurve:
    """Embedded multicurve crossing each edge exactly its prescribed count.

    Each triangle receives its unique disjoint arc pattern, nested corner by
    corner; gluing the patterns and tracing the strands end to end yields the
    components.  Raises :class:`NotAdmissible` for invalid vectors, including
    any positive weight on a boundary edge (the multicurve is closed).
    """
    tri = surface.tri if isinstance(surface, MarkedSurface) else surface
    vec = m.m if isinstance(m, AdmissibleVector) else tuple(int(x) for x in m)
    admissible(vec, tri)
    for eid, (_s, partner) in enumerate(tri.edge_sides):
        if partner is None and vec[eid]:
            raise NotAdmissible(
                f"edge {eid} lies on the boundary; a closed multicurve cannot cross it"
            )

    def point(t: int, i: int, p: int) -> tuple[int, int]:
        eid = tri.edge_of_side[(t, i)]
        if tri.edge_sides[eid][0] == (t, i):
            return (eid, p)
        return (eid, vec[eid] - 1 - p)

    arcs: list[tuple[int, int, int, int, int]] = []
    for t in range(tri.num_triangles):
        w = [vec[tri.edge_of_side[(t, i)]] for i in range(3)]
        pattern = triangle_arc_counts(*w)
        for c in range(3):
            sa, sb = c, (c + 2) % 3
            for r in range(pattern[c]):
                arcs.append((t, sa, r, sb, w[sb] - 1 - r))

    incidences: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for idx, (t, sa, pa, sb, pb) in enumerate(arcs):
        incidences.setdefault(point(t, sa, pa), []).append((idx, 0))
        incidences.setdefault(point(t, sb, pb), []).append((idx, 1))
    for pt, ends in incidences.items():
        assert len(ends) == 2, f"crossing point {pt} is not matched"

    visited = [False] * len(arcs)
    comps = []
    for idx0 in range(len(arcs)):
        if visited[idx0]:
            continue
        comp: list[Crossing] = []
        idx, enter_end = idx0, 0
        while True:
            visited[idx] = True
            t, sa, pa, sb, pb = arcs[idx]
            if enter_end == 0:
                comp.append((t, sa, sb))
                exit_pt, exit_end = point(t, sb, pb), 1
            else:
                comp.append((t, sb, sa))
                exit_pt, exit_end = point(t, sa, pa), 0
            pair = incidences[exit_pt]
            nxt = pair[1] if pair[0] == (idx, exit_end) else pair[0]
            idx, enter_end = nxt
            if (idx, enter_end) == (idx0, 0):
                break
        comps.append(comp)
    return _canon_curve(comps, oriented=False)


def enumerate_admissible(
    surface: "MarkedSurface | Triangulation",
    bound: int,
    *,
    interior_only: bool = False,
    after: "AdmissibleVector | Sequence[int] | None" = None,
) -> Iterator[AdmissibleVector]:
    """Admissible vectors with L1 norm at most ``bound``, lexicographically.

    The stream is deterministic and restartable: pass a previously produced
    vector as ``after`` to resume strictly past it.  ``interior_only`` pins
    boundary-edge weights to zero, which restricts the enumeration to closed
    multicurves.
    """
    tri = surface.tri if isinstance(surface, MarkedSurface) else surface
    if bound < 0:
        raise ValueError(f"norm bound must be non-negative, got {bound}")
    closings: list[list[tuple[int, int]]] = [[] for _ in range(tri.num_edges)]
    for t in range(tri.num_triangles):
        e = sorted(tri.edge_of_side[(t, i)] for i in range(3))
        if e[0] == e[1] or e[1] == e[2]:
            raise ValueError("triangle with a repeated edge is not supported")
        closings[e[2]].append((e[0], e[1]))
    forced = [False] * tri.num_edges
    if interior_only:
        for eid, (_s, partner) in enumerate(tri.edge_sides):
            if partner is None:
                forced[eid] = True
    if after is None:
        aft = None
    else:
        aft = after.m if isinstance(after, AdmissibleVector) else tuple(after)
        if len(aft) != tri.num_edges:
            raise ValueError(
                f"resume vector has {len(aft)} entries, expected {tri.num_edges}"
            )
    for vec in kernels.admissible_stream(tri.num_edges, closings, bound, forced, aft):
        yield AdmissibleVector(vec)
