"""Triangulated surfaces built from pants tiles, with a certified marking.

A surface of genus ``g`` with ``b`` boundary circles is assembled from
``2g - 2 + b`` triangulated pairs of pants glued along cuff circles (the
pants curves ``P``).  Each tile is a fixed 12-triangle complex; gluing is
recorded as an involution on triangle sides.

The assembly also produces a *marking*: every triangle side carries a label
in the standard surface group (:class:`~curvekit.group_core.GroupPresentation`)
such that the three labels of any triangle multiply to the identity.  The
label product of an edge loop therefore computes its class in the fundamental
group.  The construction designates explicit edge loops for the standard
generators and verifies, at build time, that

* every triangle's label product is trivial,
* each designated generator loop's label product equals that generator,
* the boundary circles spell the standard boundary words, and
* in the closed case the single surviving relation is the standard relator.

Those checks pin the labeling down as a genuine isomorphism with the
standard presentation: they exhibit homomorphisms both ways whose composite
fixes every generator, and surface groups are Hopfian.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidSignature
from ._words import (
    Word,
    concat,
    cyclic_reduce,
    free_reduce,
    inverse,
    rotations,
    substitute,
)
from .group_core import GroupPresentation

Side = tuple[int, int]
Step = tuple[Side, int]


@dataclass(frozen=True)
class SurfaceSig:
    """Topological type of a compact oriented surface: genus and boundary count."""

    genus: int
    boundary: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary < 0:
            raise InvalidSignature(f"negative signature {self.genus},{self.boundary}")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @classmethod
    def parse(cls, text: str) -> "SurfaceSig":
        """Parse ``"g=2,b=1"`` (``b`` may be omitted for closed surfaces)."""
        values = {"b": 0}
        for part in [p.strip() for p in text.split(",") if p.strip()]:
            key, _, num = part.partition("=")
            key = key.strip()
            num = num.strip()
            if key not in ("g", "b") or not num.lstrip("-").isdigit():
                raise InvalidSignature(f"cannot parse surface {text!r}")
            values[key] = int(num)
        if "g" not in values:
            raise InvalidSignature(f"cannot parse surface {text!r}")
        return cls(values["g"], values["b"])

    def format(self) -> str:
        return f"g={self.genus},b={self.boundary}"


class Triangulation:
    """An oriented triangulated surface, possibly with boundary.

    Triangles are triples of vertex ids; side ``i`` of triangle ``t`` runs
    from corner ``i`` to corner ``i + 1``.  ``glue`` pairs interior sides
    anti-parallel (which is what makes the result oriented); every unglued
    side carries a boundary-component index in ``boundary``.
    """

    def __init__(
        self,
        triangles: list[tuple[int, int, int]],
        glue: dict[Side, Side],
        boundary: dict[Side, int],
        num_vertices: int,
    ) -> None:
        self.triangles = [tuple(t) for t in triangles]
        self.glue = dict(glue)
        self.boundary = dict(boundary)
        self.num_vertices = num_vertices
        self._validate()
        self._index_edges()

    # -- construction checks -------------------------------------------------

    def _validate(self) -> None:
        for t, tri in enumerate(self.triangles):
            for v in tri:
                if not 0 <= v < self.num_vertices:
                    raise ValueError(f"triangle {t} uses unknown vertex {v}")
        for s, s2 in self.glue.items():
            if self.glue.get(s2) != s or s == s2:
                raise ValueError(f"gluing is not a fixed-point-free involution at {s}")
            if self.side_ends(s) != tuple(reversed(self.side_ends(s2))):
                raise ValueError(f"glued sides {s}, {s2} are not anti-parallel")
            if s in self.boundary:
                raise ValueError(f"side {s} is both glued and boundary")
        for t in range(len(self.triangles)):
            for i in range(3):
                s = (t, i)
                if s not in self.glue and s not in self.boundary:
                    raise ValueError(f"side {s} is neither glued nor boundary")
        if self.triangles:
            reached = {0}
            stack = [0]
            while stack:
                t = stack.pop()
                for i in range(3):
                    other = self.glue.get((t, i))
                    if other is not None and other[0] not in reached:
                        reached.add(other[0])
                        stack.append(other[0])
            if len(reached) != len(self.triangles):
                raise ValueError("triangulation is not connected")

    def _index_edges(self) -> None:
        self.edge_of_side: dict[Side, int] = {}
        self.edge_sides: list[tuple[Side, Side | None]] = []
        for t in range(len(self.triangles)):
            for i in range(3):
                s = (t, i)
                if s in self.edge_of_side:
                    continue
                eid = len(self.edge_sides)
                partner = self.glue.get(s)
                self.edge_of_side[s] = eid
                if partner is not None:
                    self.edge_of_side[partner] = eid
                self.edge_sides.append((s, partner))

    # -- basic queries -------------------------------------------------------

    def side_ends(self, s: Side) -> tuple[int, int]:
        t, i = s
        tri = self.triangles[t]
        return tri[i], tri[(i + 1) % 3]

    @property
    def num_edges(self) -> int:
        return len(self.edge_sides)

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_triangles

    @property
    def num_boundary_components(self) -> int:
        return len(set(self.boundary.values())) if self.boundary else 0

    def boundary_sides_of(self, component: int) -> list[Side]:
        return sorted(s for s, c in self.boundary.items() if c == component)

    def next_corner(self, t: int, i: int) -> tuple[int, int] | None:
        """Rotate one step around the corner vertex; ``None`` at the boundary."""
        return self.glue.get((t, (i + 2) % 3))

    def to_json(self) -> str:
        data = {
            "version": 1,
            "vertices": self.num_vertices,
            "triangles": [list(t) for t in self.triangles],
            "gluings": sorted([list(a), list(b)] for a, b in self.glue.items() if a < b),
            "boundary": sorted([list(s), c] for s, c in self.boundary.items()),
        }
        return json.dumps(data, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        data = json.loads(text)
        triangles = [tuple(t) for t in data["triangles"]]
        glue: dict[Side, Side] = {}
        for a, b in data["gluings"]:
            glue[tuple(a)] = tuple(b)
            glue[tuple(b)] = tuple(a)
        boundary = {tuple(s): c for s, c in data["boundary"]}
        return cls(triangles, glue, boundary, data["vertices"])


def euler_characteristic(surface: "Triangulation | SurfaceSig") -> int:
    """Euler characteristic of a triangulation or of a bare signature."""
    return surface.euler_characteristic


def barycentric_subdivision(tri: Triangulation) -> Triangulation:
    """Subdivide each triangle into six around edge midpoints and a center."""
    nv = tri.num_vertices
    triangles: list[tuple[int, int, int]] = []
    sub_sides: dict[tuple[Side, int], Side] = {}
    for t, (a, b, c) in enumerate(tri.triangles):
        z = nv + tri.num_edges + t
        corners = (a, b, c)
        for i in range(3):
            u, v = corners[i], corners[(i + 1) % 3]
            mid = nv + tri.edge_of_side[(t, i)]
            t1 = len(triangles)
            triangles.append((u, mid, z))
            t2 = len(triangles)
            triangles.append((mid, v, z))
            sub_sides[((t, i), 0)] = (t1, 0)
            sub_sides[((t, i), 1)] = (t2, 0)

    glue: dict[Side, Side] = {}
    boundary: dict[Side, int] = {}

    def pair(s1: Side, s2: Side) -> None:
        glue[s1] = s2
        glue[s2] = s1

    for t in range(tri.num_triangles):
        for i in range(3):
            s = (t, i)
            first, second = sub_sides[(s, 0)], sub_sides[(s, 1)]
            pair((first[0], 1), (second[0], 2))  # spoke to the shared center
            nxt = sub_sides[((t, (i + 1) % 3), 0)]
            pair((second[0], 1), (nxt[0], 2))  # spoke across the corner
            partner = tri.glue.get(s)
            if partner is None:
                boundary[first] = tri.boundary[s]
                boundary[second] = tri.boundary[s]
            elif partner < s:
                pf, ps = sub_sides[(partner, 0)], sub_sides[(partner, 1)]
                pair(first, ps)
                pair(second, pf)
    total = nv + tri.num_edges + tri.num_triangles
    return Triangulation(triangles, glue, boundary, total)


# ---------------------------------------------------------------------------
# tile assembly
# ---------------------------------------------------------------------------


class BuildError(RuntimeError):
    """Internal assembly inconsistency (unsupported variant or broken tile)."""


class _Builder:
    def __init__(self) -> None:
        self.triangles: list[tuple[int, int, int]] = []
        self.glue: dict[Side, Side] = {}
        self.label: dict[Side, Word] = {}
        self.boundary: dict[Side, int] = {}
        self.tree: list[Side] = []
        self.seams: list[Side] = []
        self.num_vertices = 0

    def vertices(self, n: int) -> list[int]:
        out = list(range(self.num_vertices, self.num_vertices + n))
        self.num_vertices += n
        return out

    def tri(self, a: int, b: int, c: int) -> int:
        self.triangles.append((a, b, c))
        return len(self.triangles) - 1

    def side_ends(self, s: Side) -> tuple[int, int]:
        t, i = s
        tri = self.triangles[t]
        return tri[i], tri[(i + 1) % 3]

    def glue_sides(self, s1: Side, s2: Side) -> None:
        if s1 in self.glue or s2 in self.glue:
            raise BuildError(f"side {s1} or {s2} already glued")
        if self.side_ends(s1) != tuple(reversed(self.side_ends(s2))):
            raise BuildError(f"sides {s1}, {s2} are not anti-parallel")
        self.glue[s1] = s2
        self.glue[s2] = s1
        if s1 in self.label and s2 not in self.label:
            self.label[s2] = inverse(self.label[s1])
        elif s2 in self.label and s1 not in self.label:
            self.label[s1] = inverse(self.label[s2])

    def set_label(self, s: Side, w: Word) -> None:
        w = free_reduce(w)
        if s in self.label:
            if self.label[s] != w:
                raise BuildError(f"conflicting label on side {s}")
            return
        self.label[s] = w
        partner = self.glue.get(s)
        if partner is not None:
            self.label[partner] = inverse(w)

    def substitute_labels(self, images: dict[int, Word]) -> None:
        self.label = {s: substitute(w, images) for s, w in self.label.items()}


def _add_pants(bld: _Builder, cuff_vertices: dict[int, tuple[int, int]]) -> dict:
    """Add the 12-triangle pants tile; cuff circles may reuse host vertices.

    Cuff ``c`` is the two-edge circle ``u_c -> top_c -> w_c -> bot_c -> u_c``.
    Three seam edges join the cuffs pairwise, and two cone vertices ``f``,
    ``k`` triangulate the front and back hexagons of the pants.
    """
    u1, w1 = cuff_vertices[1]
    u2, w2 = cuff_vertices[2]
    u3, w3 = cuff_vertices[3]
    f, k = bld.vertices(2)
    front = [(u1, w1), (w1, u2), (u2, w2), (w2, u3), (u3, w3), (w3, u1)]
    back = [(w1, u1), (u1, w3), (w3, u3), (u3, w2), (w2, u2), (u2, w1)]
    F = [bld.tri(f, a, b) for a, b in front]
    B = [bld.tri(k, a, b) for a, b in back]
    for fan in (F, B):
        for j in range(6):
            bld.glue_sides((fan[j], 2), (fan[(j + 1) % 6], 0))
    for fs, bs in (((F[1], 1), (B[5], 1)), ((F[3], 1), (B[3], 1)), ((F[5], 1), (B[1], 1))):
        bld.glue_sides(fs, bs)
        bld.seams.append(fs)
    return {
        "f": f,
        "k": k,
        "tris": F + B,
        "top": {1: (F[0], 1), 2: (F[2], 1), 3: (F[4], 1)},
        "bot": {1: (B[0], 1), 2: (B[4], 1), 3: (B[2], 1)},
        "seam": {12: (F[1], 1), 23: (F[3], 1), 31: (F[5], 1)},
        "fcone": {
            "u1": (F[0], 0),
            "w1": (F[1], 0),
            "u2": (F[2], 0),
            "w2": (F[3], 0),
            "u3": (F[4], 0),
            "w3": (F[5], 0),
        },
        "kcone": {
            "w1": (B[0], 0),
            "u1": (B[1], 0),
            "w3": (B[2], 0),
            "u3": (B[3], 0),
            "w2": (B[4], 0),
            "u2": (B[5], 0),
        },
    }


def _solve_tile(bld: _Builder, tile: dict) -> list[Word]:
    """Propagate labels over the tile's triangles; return nontrivial residues.

    Each triangle imposes the condition that its three side labels multiply
    to the identity.  A triangle with a single unlabeled side is solved for
    it; a fully labeled triangle whose product does not reduce to the empty
    word contributes that product as a residue.
    """
    pending = set(tile["tris"])
    residues: list[Word] = []
    progress = True
    while pending and progress:
        progress = False
        for t in sorted(pending):
            sides = [(t, 0), (t, 1), (t, 2)]
            labs = [bld.label.get(s) for s in sides]
            missing = [i for i, lab in enumerate(labs) if lab is None]
            if not missing:
                word = free_reduce(concat(labs[0], labs[1], labs[2]))
                if word:
                    residues.append(word)
                pending.discard(t)
                progress = True
            elif len(missing) == 1:
                i = missing[0]
                nxt, prv = labs[(i + 1) % 3], labs[(i + 2) % 3]
                bld.set_label(sides[i], inverse(concat(nxt, prv)))
                pending.discard(t)
                progress = True
    if pending:
        raise BuildError("tile labeling did not propagate to every side")
    return residues


def _glue_cuff(bld: _Builder, tile_top: Side, tile_bot: Side, host_top: Side, host_bot: Side) -> None:
    if bld.side_ends(tile_top) == tuple(reversed(bld.side_ends(host_top))):
        bld.glue_sides(tile_top, host_top)
        bld.glue_sides(tile_bot, host_bot)
    else:
        bld.glue_sides(tile_top, host_bot)
        bld.glue_sides(tile_bot, host_top)


def _eliminate(relation: Word, letter: int) -> dict[int, Word]:
    """Solve ``relation == 1`` for ``letter``, which must occur exactly once."""
    hits = [i for i, x in enumerate(relation) if abs(x) == letter]
    if len(hits) != 1:
        raise BuildError(f"letter {letter} occurs {len(hits)} times in relation")
    i = hits[0]
    prefix, sign, suffix = relation[:i], relation[i], relation[i + 1 :]
    solved = concat(inverse(prefix), inverse(suffix))
    if sign < 0:
        solved = inverse(solved)
    return {letter: free_reduce(solved)}


@dataclass(frozen=True)
class PantsCurve:
    """One pants-decomposition circle, as a two-edge cycle with its class."""

    steps: tuple[Step, ...]
    word: Word
    kind: str


@dataclass(frozen=True)
class FillerComponent:
    steps: tuple[Step, ...]
    word: Word


@dataclass(frozen=True)
class BoundaryCircle:
    steps: tuple[Step, ...]
    word: Word


@dataclass
class MarkedSurface:
    """A standard triangulated surface together with its certified marking."""

    sig: SurfaceSig
    group: GroupPresentation
    tri: Triangulation
    base_vertex: int
    labels: dict[Side, Word]
    tree_sides: tuple[Side, ...]
    seam_sides: tuple[Side, ...]
    generator_loops: dict[int, tuple[Step, ...]]
    pants: tuple[PantsCurve, ...]
    filler: tuple[FillerComponent, ...]
    boundary_circles: tuple[BoundaryCircle, ...]
    relation: Word | None
    variant: int
    _parent: dict[int, Step | None] = field(default_factory=dict, repr=False)
    _path_cache: dict[int, tuple[Step, ...]] = field(default_factory=dict, repr=False)
    _curve_cache: dict = field(default_factory=dict, repr=False)

    # -- paths in the marking tree ------------------------------------------

    def _ensure_tree(self) -> None:
        if self._parent:
            return
        adj: dict[int, list[Step]] = {}
        for s in self.tree_sides:
            u, v = self.tri.side_ends(s)
            adj.setdefault(u, []).append((s, 1))
            adj.setdefault(v, []).append((s, -1))
        parent: dict[int, Step | None] = {self.base_vertex: None}
        queue = [self.base_vertex]
        while queue:
            v = queue.pop(0)
            for s, sign in adj.get(v, []):
                u, w = self.tri.side_ends(s)
                dst = w if sign == 1 else u
                if dst not in parent:
                    parent[dst] = (s, sign)
                    queue.append(dst)
        if len(parent) != self.tri.num_vertices:
            raise BuildError("marking tree does not span the surface")
        self._parent.update(parent)

    def tree_path(self, v: int) -> tuple[Step, ...]:
        """Edge steps from the base vertex to ``v`` inside the marking tree."""
        self._ensure_tree()
        cached = self._path_cache.get(v)
        if cached is not None:
            return cached
        steps: list[Step] = []
        cur = v
        while True:
            step = self._parent[cur]
            if step is None:
                break
            steps.append(step)
            s, sign = step
            u, w = self.tri.side_ends(s)
            cur = u if sign == 1 else w
        steps.reverse()
        out = tuple(steps)
        self._path_cache[v] = out
        return out

    def step_ends(self, step: Step) -> tuple[int, int]:
        s, sign = step
        u, v = self.tri.side_ends(s)
        return (u, v) if sign == 1 else (v, u)

    def step_word(self, steps) -> Word:
        """Label product along a sequence of directed edge steps."""
        parts = [
            self.labels[s] if sign == 1 else inverse(self.labels[s])
            for s, sign in steps
        ]
        return free_reduce(concat(*parts)) if parts else ()

    def loop_of_path(self, steps: tuple[Step, ...]) -> tuple[Step, ...]:
        """Close an edge path into a based loop through the marking tree."""
        first = self.step_ends(steps[0])[0]
        last = self.step_ends(steps[-1])[1]
        out = self.tree_path(first) + tuple(steps)
        out += tuple((s, -sign) for s, sign in reversed(self.tree_path(last)))
        return out

    def loop_of_cycle(self, steps: tuple[Step, ...]) -> tuple[Step, ...]:
        """Close an edge cycle into a based loop through the marking tree."""
        return self.loop_of_path(steps)

    def class_of_cycle(self, steps: tuple[Step, ...]) -> Word:
        """Based class of an edge cycle (well defined up to conjugacy)."""
        return self.step_word(self.loop_of_cycle(steps))

    # -- reference curves in transverse form --------------------------------

    def pants_vector(self, index: int):
        """Edge crossing counts of pants circle ``index`` in minimal position."""
        from . import curves

        key = ("pants_vector", index)
        cached = self._curve_cache.get(key)
        if cached is None:
            tight = curves.tighten(self.pants[index].word, self)
            cached = curves.admissible(tight.edge_counts(self.tri), self.tri)
            self._curve_cache[key] = cached
        return cached

    def pants_normal(self, index: int):
        """Embedded representative of pants circle ``index``."""
        from . import curves

        key = ("pants_normal", index)
        cached = self._curve_cache.get(key)
        if cached is None:
            cached = curves.reconstruct(self.pants_vector(index), self.tri)
            self._curve_cache[key] = cached
        return cached

    def filler_vector(self):
        """Summed edge crossing counts of the filling system's components."""
        from . import curves

        key = ("filler_vector",)
        cached = self._curve_cache.get(key)
        if cached is None:
            total = [0] * self.tri.num_edges
            for comp in self.filler:
                tight = curves.tighten(comp.word, self)
                for eid, n in enumerate(tight.edge_counts(self.tri)):
                    total[eid] += n
            cached = curves.admissible(total, self.tri)
            self._curve_cache[key] = cached
        return cached

    def to_json(self) -> str:
        data = {
            "version": 1,
            "surface": self.sig.format(),
            "triangulation": json.loads(self.tri.to_json()),
            "labels": sorted(
                [list(s), self.group.format(w)] for s, w in self.labels.items()
            ),
        }
        return json.dumps(data, separators=(",", ":"))


def build_standard(sig: SurfaceSig, *, variant: int = 0) -> MarkedSurface:
    """Deterministically build the standard marked surface for ``sig``.

    Genus at least two is required here; the smaller hyperbolic-type pieces
    that show up when cutting are built through :func:`build_marked_any`.
    ``variant`` flips individual cuff-gluing offsets (one bit per gluing
    event) so tests can confirm that answers do not depend on assembly
    choices.
    """
    if sig.genus < 2:
        raise InvalidSignature(f"standard build needs genus >= 2, got {sig.format()}")
    return build_marked_any(sig, variant=variant)


def build_marked_any(sig: SurfaceSig, *, variant: int = 0) -> MarkedSurface:
    """Build a marked surface for any signature with negative Euler number."""
    g, b = sig.genus, sig.boundary
    if sig.euler_characteristic >= 0:
        raise InvalidSignature(f"surface {sig.format()} admits no pants decomposition")
    group = GroupPresentation(g, b)
    bld = _Builder()

    event = [0]

    def offset() -> int:
        bit = (variant >> event[0]) & 1
        event[0] += 1
        return bit

    temp_base = 2 * g + b + 8
    temp_next = [temp_base]

    def fresh_temp() -> int:
        temp_next[0] += 1
        return temp_next[0] - 1

    closing_relation: list[Word | None] = [None]
    handles: list[dict] = []
    chain_tiles: list[dict] = []
    holes: list[dict] = []  # {"top": side, "bot": side, "temp": letter or None}

    def tile_tree(tile: dict, names: list[tuple[str, str]]) -> None:
        for fan, corner in names:
            side = tile[fan][corner]
            bld.tree.append(side)
            bld.set_label(side, ())

    def add_handle_tile(i: int, host: dict | None) -> None:
        """One-holed-torus tile for handle ``i``, glued onto ``host`` if given."""
        a_i, b_i = 2 * i - 1, 2 * i
        if host is None:
            u, w = bld.vertices(2)
            u3, w3 = bld.vertices(2)
        else:
            hu, hw = bld.side_ends(host["top"])
            u3, w3 = (hu, hw) if offset() == 0 else (hw, hu)
            u, w = bld.vertices(2)
        pair = (u, w) if offset() == 0 else (w, u)
        tile = _add_pants(bld, {1: (u, w), 2: pair, 3: (u3, w3)})
        # cuffs 1 and 2 close up into the handle circle
        _glue_cuff(bld, tile["top"][1], tile["bot"][1], tile["top"][2], tile["bot"][2])
        if host is not None:
            _glue_cuff(bld, tile["top"][3], tile["bot"][3], host["top"], host["bot"])
            tile_tree(tile, [("fcone", "u3"), ("fcone", "u1"), ("fcone", "w1"), ("kcone", "w1")])
        else:
            tile_tree(
                tile,
                [
                    ("fcone", "u1"),
                    ("fcone", "w1"),
                    ("fcone", "u3"),
                    ("fcone", "w3"),
                    ("kcone", "w1"),
                ],
            )
        bld.set_label(tile["bot"][1], (-a_i,))
        bld.set_label(tile["seam"][12], (b_i,))
        residues = _solve_tile(bld, tile)
        handles.append(tile)
        if host is None:
            if residues:
                raise BuildError("base handle tile produced a relation")
            return
        if len(residues) != 1:
            raise BuildError(f"handle attachment produced {len(residues)} relations")
        relation = residues[0]
        if any(abs(x) >= temp_base for x in relation):
            target = host["temp"]
            if target is None or not any(abs(x) == target for x in relation):
                raise BuildError("handle relation misses the hole letter")
            bld.substitute_labels(_eliminate(relation, target))
        else:
            if closing_relation[0] is not None or b != 0:
                raise BuildError("unexpected closing relation")
            closing_relation[0] = relation

    def add_chain_tile(host: dict) -> dict:
        """Plain pants tile glued along cuff 1 onto the current chain hole."""
        hu, hw = bld.side_ends(host["top"])
        u1, w1 = (hu, hw) if offset() == 0 else (hw, hu)
        u2, w2 = bld.vertices(2)
        u3, w3 = bld.vertices(2)
        tile = _add_pants(bld, {1: (u1, w1), 2: (u2, w2), 3: (u3, w3)})
        _glue_cuff(bld, tile["top"][1], tile["bot"][1], host["top"], host["bot"])
        tile_tree(
            tile,
            [
                ("fcone", "u1"),
                ("fcone", "u2"),
                ("fcone", "w2"),
                ("fcone", "u3"),
                ("fcone", "w3"),
                ("kcone", "w1"),
            ],
        )
        tile["y"] = fresh_temp()
        bld.set_label(tile["bot"][3], (tile["y"],))
        if _solve_tile(bld, tile):
            raise BuildError("chain tile produced a relation")
        chain_tiles.append(tile)
        return tile

    def add_base_pants() -> dict:
        """Free-standing pants tile starting a genus-zero chain."""
        u1, w1 = bld.vertices(2)
        u2, w2 = bld.vertices(2)
        u3, w3 = bld.vertices(2)
        tile = _add_pants(bld, {1: (u1, w1), 2: (u2, w2), 3: (u3, w3)})
        tile_tree(
            tile,
            [
                ("fcone", "u1"),
                ("fcone", "w1"),
                ("fcone", "u2"),
                ("fcone", "w2"),
                ("fcone", "u3"),
                ("fcone", "w3"),
                ("kcone", "w1"),
            ],
        )
        tile["x"], tile["y"] = fresh_temp(), fresh_temp()
        bld.set_label(tile["bot"][1], (tile["x"],))
        bld.set_label(tile["bot"][3], (tile["y"],))
        if _solve_tile(bld, tile):
            raise BuildError("base pants tile produced a relation")
        chain_tiles.append(tile)
        return tile

    # -- caterpillar assembly ------------------------------------------------
    m = g + b
    if g >= 1:
        add_handle_tile(1, None)
        base_vertex = handles[0]["f"]
        chain_hole = {"top": handles[0]["top"][3], "bot": handles[0]["bot"][3], "temp": None}
        for _ in range(m - 2):
            tile = add_chain_tile(chain_hole)
            holes.append({"top": tile["top"][2], "bot": tile["bot"][2], "temp": tile["y"]})
            chain_hole = {"top": tile["top"][3], "bot": tile["bot"][3], "temp": tile["y"]}
        holes.append(chain_hole)
    else:
        base = add_base_pants()
        base_vertex = base["f"]
        holes.append({"top": base["top"][1], "bot": base["bot"][1], "temp": base["x"]})
        holes.append({"top": base["top"][2], "bot": base["bot"][2], "temp": base["y"]})
        chain_hole = {"top": base["top"][3], "bot": base["bot"][3], "temp": base["y"]}
        for _ in range(b - 3):
            tile = add_chain_tile(chain_hole)
            holes.append({"top": tile["top"][2], "bot": tile["bot"][2], "temp": tile["y"]})
            chain_hole = {"top": tile["top"][3], "bot": tile["bot"][3], "temp": tile["y"]}
        holes.append(chain_hole)

    attach_records: list[dict] = []
    for i in range(2, g + 1):
        add_handle_tile(i, holes.pop(0))
        attach_records.append({"top": handles[-1]["top"][3], "bot": handles[-1]["bot"][3]})

    if len(holes) != b:
        raise BuildError(f"expected {b} boundary holes, found {len(holes)}")

    # -- boundary normalization ---------------------------------------------
    def hole_word(hole: dict) -> Word:
        return free_reduce(concat(bld.label[hole["top"]], bld.label[hole["bot"]]))

    for j in range(1, b):
        relation = free_reduce(concat(hole_word(holes[j - 1]), (2 * g + j,)))
        target = holes[j - 1]["temp"]
        if target is None or not any(abs(x) == target for x in relation):
            raise BuildError("boundary hole has no solvable letter")
        bld.substitute_labels(_eliminate(relation, target))

    for s, w in bld.label.items():
        if any(abs(x) >= temp_base for x in w):
            raise BuildError(f"temporary letter survives in label of side {s}")

    if b:
        commutators: list[int] = []
        for i in range(1, g + 1):
            commutators.extend((2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)))
        expected_last = free_reduce(
            tuple(commutators) + tuple(2 * g + j for j in range(1, b))
        )
        if hole_word(holes[b - 1]) != expected_last:
            raise BuildError("last boundary circle does not close up the relator")
        for j, hole in enumerate(holes):
            bld.boundary[hole["top"]] = j
            bld.boundary[hole["bot"]] = j
    else:
        relation = closing_relation[0]
        if relation is None:
            raise BuildError("closed assembly produced no relation")
        core, _ = cyclic_reduce(relation)
        allowed = set(rotations(group.relator)) | set(rotations(inverse(group.relator)))
        if core not in allowed:
            raise BuildError("closed relation is not the standard relator")

    tri = Triangulation(bld.triangles, bld.glue, bld.boundary, bld.num_vertices)
    if tri.euler_characteristic != sig.euler_characteristic:
        raise BuildError("assembled surface has the wrong Euler characteristic")
    if len(bld.tree) != tri.num_vertices - 1:
        raise BuildError("marking tree has the wrong size")

    # -- verification of the labeling ---------------------------------------
    for t in range(tri.num_triangles):
        word = free_reduce(concat(bld.label[(t, 0)], bld.label[(t, 1)], bld.label[(t, 2)]))
        if word and (group.is_free or not group.is_trivial(word)):
            raise BuildError(f"triangle {t} has a nontrivial label product")

    # -- curve bookkeeping ---------------------------------------------------
    def cycle_edges(steps: tuple[Step, ...]) -> frozenset[Side]:
        out: set[Side] = set()
        for s, _ in steps:
            out.add(s)
            partner = bld.glue.get(s)
            if partner is not None:
                out.add(partner)
        return frozenset(out)

    pants: list[PantsCurve] = []
    seen_circles: set[frozenset[Side]] = set()

    for tile in handles:
        steps = ((tile["bot"][1], -1), (tile["top"][1], -1))
        pants.append(PantsCurve(steps, _steps_label(bld, steps), "handle"))
        seen_circles.add(cycle_edges(steps))

    delta_records: list[dict] = []
    if g >= 1:
        delta_records.append({"top": handles[0]["top"][3], "bot": handles[0]["bot"][3]})
    delta_records.extend(attach_records)
    link_records = [
        {"top": chain_tiles[k]["top"][3], "bot": chain_tiles[k]["bot"][3]}
        for k in range(len(chain_tiles) - 1)
    ]
    for kind, records in (("attach", delta_records), ("link", link_records)):
        for rec in records:
            if rec["top"] in bld.boundary or rec["top"] not in bld.glue:
                continue
            steps = ((rec["top"], 1), (rec["bot"], 1))
            edges = cycle_edges(steps)
            if edges in seen_circles:
                continue
            pants.append(PantsCurve(steps, _steps_label(bld, steps), kind))
            seen_circles.add(edges)

    expected_pants = 3 * g - 3 + b
    if len(pants) != expected_pants:
        raise BuildError(f"expected {expected_pants} pants curves, found {len(pants)}")

    boundary_circles = []
    for hole in holes:
        steps = ((hole["bot"], -1), (hole["top"], -1))
        boundary_circles.append(BoundaryCircle(steps, _steps_label(bld, steps)))

    boundary_tops = {hole["top"] for hole in holes}
    filler_parts = []
    for steps in _trace_filler(bld, boundary_tops):
        word = _steps_label(bld, steps)
        # a pants tile standing alone closes its seams into a null-homotopic
        # hexagon; such components carry nothing and are dropped
        if group.is_trivial(word):
            continue
        filler_parts.append(FillerComponent(steps, word))
    filler = tuple(filler_parts)

    ms = MarkedSurface(
        sig=sig,
        group=group,
        tri=tri,
        base_vertex=base_vertex,
        labels=dict(bld.label),
        tree_sides=tuple(bld.tree),
        seam_sides=tuple(bld.seams),
        generator_loops={},
        pants=tuple(pants),
        filler=filler,
        boundary_circles=tuple(boundary_circles),
        relation=closing_relation[0],
        variant=variant,
    )

    # designated generator loops, and the realization check
    loops: dict[int, tuple[Step, ...]] = {}
    for i, tile in enumerate(handles, start=1):
        loops[2 * i - 1] = ms.loop_of_path(((tile["bot"][1], -1),))
        loops[2 * i] = ms.loop_of_path(((tile["seam"][12], 1),))
    for j in range(1, b):
        hole = holes[j - 1]
        loops[2 * g + j] = ms.loop_of_path(((hole["bot"], -1), (hole["top"], -1)))
    ms.generator_loops.update(loops)

    for letter, loop in loops.items():
        if ms.step_word(loop) != (letter,):
            raise BuildError(f"generator loop for letter {letter} is not realized")
    expected_words = group.boundary_words()
    for j, circle in enumerate(ms.boundary_circles):
        if circle.word != free_reduce(expected_words[j]):
            raise BuildError(
                f"boundary circle {j} spells {circle.word}, wanted {expected_words[j]}"
            )

    return ms


def _steps_label(bld: _Builder, steps: tuple[Step, ...]) -> Word:
    parts = [bld.label[s] if sign == 1 else inverse(bld.label[s]) for s, sign in steps]
    return free_reduce(concat(*parts))


def _trace_filler(bld: _Builder, boundary_tops: set[Side]) -> list[tuple[Step, ...]]:
    """Close the seam edges of all tiles into the filler multicurve.

    At an interior cuff vertex the two incident seam ends continue into one
    another.  A seam ending on a boundary cuff is carried along that cuff's
    top arc to the seam waiting at the other vertex, so every component is a
    closed edge cycle crossing each interior cuff circle at its two vertices.
    """
    ends_at: dict[int, list[tuple[Side, int]]] = {}
    seam_set = set(bld.seams)
    for s in bld.seams + sorted(boundary_tops):
        u, v = bld.side_ends(s)
        ends_at.setdefault(u, []).append((s, 0))
        ends_at.setdefault(v, []).append((s, 1))

    mate: dict[tuple[Side, int], tuple[Side, int]] = {}
    for v, ends in ends_at.items():
        seam_ends = [e for e in ends if e[0] in seam_set]
        top_ends = [e for e in ends if e[0] not in seam_set]
        if len(seam_ends) == 2 and not top_ends:
            mate[seam_ends[0]] = seam_ends[1]
            mate[seam_ends[1]] = seam_ends[0]
        elif len(seam_ends) == 1 and len(top_ends) == 1:
            mate[seam_ends[0]] = top_ends[0]
            mate[top_ends[0]] = seam_ends[0]
        else:
            raise BuildError(f"vertex {v} has an unexpected seam pattern")

    components: list[tuple[Step, ...]] = []
    used: set[Side] = set()
    for s0 in bld.seams:
        if s0 in used:
            continue
        start = (s0, 0)
        steps: list[Step] = []
        end = start
        while True:
            side, pol = end
            used.add(side)
            steps.append((side, 1) if pol == 0 else (side, -1))
            nxt = mate[(side, 1 - pol)]
            if nxt == start:
                break
            end = nxt
        components.append(tuple(steps))
    return components
