"""Chord arrangements and complement regions on a triangulated surface.

A configuration is a set of strands (cyclic crossing sequences) together
with an order of crossing points along every edge.  Realizing each arc as a
straight chord in a model triangle with rational coordinates fixes which
chord pairs cross and with which sign; the planar subdivision itself is then
rebuilt combinatorially from the sequence of crossings along every chord.
Sliding a chord across a crossing of two others permutes those sequences
without changing any crossing pair, so the possible subdivisions for one
edge-order state form a connected family explored by such triple flips.

Gluing the boundary subsegments across edges and dissolving them yields the
cell decomposition of the complement of the strands in the surface.  Each
complement region is classified by its Euler characteristic and boundary
cycles.  A disk region with one or two crossing corners is a monogon or
bigon; removing it by rerouting one strand along the other side strictly
lowers the crossing count, which is the engine behind minimal-position
searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

Crossing = tuple[int, int, int]
Token = tuple[int, int]

_CORNERS = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
)


class Degenerate(Exception):
    """The chosen coordinates produced a coincidence; retry with jitter."""


def _jitter(eid: int, pos: int, m: int, attempt: int) -> Fraction:
    if attempt == 0:
        return Fraction(0)
    h = hash((attempt, eid, pos)) & 0xFFFF
    return Fraction(h - 0x8000, 0x8000 * 3 * (m + 1))


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _seg_cross(p1, p2, q1, q2):
    """Interior crossing point of two segments, None apart, Degenerate on touch."""
    o1 = _orient(p1, p2, q1)
    o2 = _orient(p1, p2, q2)
    o3 = _orient(q1, q2, p1)
    o4 = _orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
        dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
        den = dx1 * dy2 - dy1 * dx2
        s = ((q1[0] - p1[0]) * dy2 - (q1[1] - p1[1]) * dx2) / den
        return (p1[0] + s * dx1, p1[1] + s * dy1)
    if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
        lo1, hi1 = sorted((p1, p2))
        lo2, hi2 = sorted((q1, q2))
        if not (hi1 < lo2 or hi2 < lo1):
            raise Degenerate("segments touch without crossing properly")
    return None


def _dir_cmp(d1, d2) -> int:
    def half(d):
        return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cr = d1[0] * d2[1] - d1[1] * d2[0]
    if cr == 0:
        raise Degenerate("parallel directions at one vertex")
    return -1 if cr > 0 else 1


def _side_params(tri, orders, t: int, side: int, attempt: int):
    """Tokens on one triangle side with chart parameters, sorted ascending."""
    eid = tri.edge_of_side.get((t, side))
    if eid is None:
        return []
    toks = orders.get(eid, [])
    m = len(toks)
    out = []
    canonical = tri.edge_sides[eid][0] == (t, side)
    for p, tok in enumerate(toks):
        x = Fraction(p + 1, m + 1) + _jitter(eid, p, m, attempt)
        if not canonical:
            x = 1 - x
        out.append((x, tok))
    out.sort()
    return out


def _point_on_side(side: int, x: Fraction):
    a = _CORNERS[side]
    b = _CORNERS[(side + 1) % 3]
    return (a[0] + x * (b[0] - a[0]), a[1] + x * (b[1] - a[1]))


@dataclass
class _ChartData:
    """Flip-invariant data of one triangle chart.

    Straight-chord coordinates fix which chord pairs cross and with which
    sign, the rotation template at the boundary vertices, and an initial
    crossing sequence along every chord; everything else is rebuilt from the
    sequences alone.
    """

    t: int
    kinds: list          # boundary vertices: ("corner", c) | ("tok", token, side)
    seg_edges: list      # (va, vb, "seg", (side, subseg index))
    chords: list         # (strand, arc index, vid_in, vid_out)
    xlist: list          # crossing chord pairs (ci, cj), ci < cj, fixed order
    xsign: dict          # pair -> +1 when chord cj points left of chord ci
    init_seq: dict       # ci -> pairs in order along the chord
    bstar: dict          # boundary vid -> slot descriptors, counterclockwise
    ci_of: dict          # (strand, arc index) -> chord index
    pass_lo: dict        # (ci, walking forward) -> insert below the end token


def _chart_data(tri, strands, orders, t: int, attempt: int) -> _ChartData:
    pts = []
    kinds = []
    vid_of_tok: dict[tuple, int] = {}
    for c in range(3):
        pts.append(_CORNERS[c])
        kinds.append(("corner", c))
    side_points = {}
    for side in range(3):
        lst = _side_params(tri, orders, t, side, attempt)
        side_points[side] = lst
        for x, tok in lst:
            vid_of_tok[(tok, side)] = len(pts)
            pts.append(_point_on_side(side, x))
            kinds.append(("tok", tok, side))

    chords = []
    ci_of = {}
    for s, comp in enumerate(strands):
        n = len(comp)
        for k, (tt, i, j) in enumerate(comp):
            if tt != t:
                continue
            ev_in = (s, (k - 1) % n)
            ev_out = (s, k)
            ci_of[(s, k)] = len(chords)
            chords.append((s, k, vid_of_tok[(ev_in, i)], vid_of_tok[(ev_out, j)]))

    cross_pts: dict = {}
    xsign = {}
    on_chord: dict[int, list] = {ci: [] for ci in range(len(chords))}
    for ci in range(len(chords)):
        _s, _k, va, vb = chords[ci]
        for c in range(3):
            if _orient(pts[va], pts[vb], pts[c]) == 0:
                lo, hi = sorted((pts[va], pts[vb]))
                if lo <= pts[c] <= hi:
                    raise Degenerate("chord through a triangle corner")
        for cj in range(ci + 1, len(chords)):
            _s2, _k2, vc, vd = chords[cj]
            pt = _seg_cross(pts[va], pts[vb], pts[vc], pts[vd])
            if pt is None:
                continue
            if pt in cross_pts:
                raise Degenerate("three chords through one point")
            pair = (ci, cj)
            cross_pts[pt] = pair
            di = (pts[vb][0] - pts[va][0], pts[vb][1] - pts[va][1])
            dj = (pts[vd][0] - pts[vc][0], pts[vd][1] - pts[vc][1])
            cr = di[0] * dj[1] - di[1] * dj[0]
            xsign[pair] = 1 if cr > 0 else -1
            on_chord[ci].append((pt, pair))
            on_chord[cj].append((pt, pair))

    init_seq = {}
    for ci, (_s, _k, va, vb) in enumerate(chords):
        a, b = pts[va], pts[vb]
        dx, dy = b[0] - a[0], b[1] - a[1]
        mids = sorted(
            on_chord[ci],
            key=lambda item: (item[0][0] - a[0]) * dx + (item[0][1] - a[1]) * dy,
        )
        init_seq[ci] = [pair for _pt, pair in mids]

    seg_edges = []
    for side in range(3):
        chain = [side] + [vid_of_tok[(tok, side)] for _x, tok in side_points[side]]
        chain.append((side + 1) % 3)
        m = len(side_points[side])
        if (t, side) in tri.edge_of_side:
            eid = tri.edge_of_side[(t, side)]
            canonical = tri.edge_sides[eid][0] == (t, side)
        else:
            canonical = True
        for q in range(len(chain) - 1):
            sub = q if canonical else m - q
            seg_edges.append((chain[q], chain[q + 1], "seg", (side, sub)))

    # rotation template at boundary vertices, counterclockwise
    incident: dict[int, list] = {v: [] for v in range(len(pts))}
    for ei, (va, vb, _kind, _info) in enumerate(seg_edges):
        d = (pts[vb][0] - pts[va][0], pts[vb][1] - pts[va][1])
        incident[va].append((d, ("seg", ei, True)))
        incident[vb].append(((-d[0], -d[1]), ("seg", ei, False)))
    for ci, (_s, _k, va, vb) in enumerate(chords):
        d = (pts[vb][0] - pts[va][0], pts[vb][1] - pts[va][1])
        incident[va].append((d, ("chordend", ci, 0)))
        incident[vb].append(((-d[0], -d[1]), ("chordend", ci, 1)))
    bstar = {}
    for v, lst in incident.items():
        lst.sort(key=cmp_to_key(lambda a, b: _dir_cmp(a[0], b[0])))
        bstar[v] = [desc for _d, desc in lst]

    pass_lo = {}
    for ci, (_s, _k, va, vb) in enumerate(chords):
        d = (pts[vb][0] - pts[va][0], pts[vb][1] - pts[va][1])
        for forward in (True, False):
            w = d if forward else (-d[0], -d[1])
            nu = (-w[1], w[0])  # region side: faces lie left of the walk
            vhead = vb if forward else va
            side = kinds[vhead][2]
            a = _CORNERS[side]
            b = _CORNERS[(side + 1) % 3]
            tau = (b[0] - a[0], b[1] - a[1])
            eid = tri.edge_of_side[(t, side)]
            if tri.edge_sides[eid][0] != (t, side):
                tau = (-tau[0], -tau[1])
            dot = nu[0] * tau[0] + nu[1] * tau[1]
            if dot == 0:
                raise Degenerate("chord meets its edge tangentially")
            pass_lo[(ci, forward)] = dot > 0

    return _ChartData(
        t=t, kinds=kinds, seg_edges=seg_edges, chords=chords,
        xlist=sorted(xsign), xsign=xsign, init_seq=init_seq, bstar=bstar,
        ci_of=ci_of, pass_lo=pass_lo,
    )


@dataclass
class _Chart:
    """Planar subdivision of one triangle for given crossing sequences."""

    kinds: list          # ("corner", c) | ("tok", token, side) | ("x", key)
    edges: list          # (va, vb, kind, info)
    faces: list          # list of half-edge ids, face on the left
    face_of: list        # half-edge id -> face index
    outer: int
    seg_half: dict       # (side, subseg index) -> inner half-edge id

    def he_ends(self, h: int):
        va, vb, _k, _i = self.edges[h // 2]
        return (va, vb) if h % 2 == 0 else (vb, va)


def _chart_map(data: _ChartData, seq: dict) -> _Chart:
    kinds = list(data.kinds)
    xvid = {}
    for pair in data.xlist:
        xvid[pair] = len(kinds)
        kinds.append(("x", (data.t, pair)))

    edges = list(data.seg_edges)
    first_piece = {}
    last_piece = {}
    piece_before = {}
    piece_after = {}
    for ci, (s, k, va, vb) in enumerate(data.chords):
        chain = [va] + [xvid[pair] for pair in seq[ci]] + [vb]
        eids = []
        for q in range(len(chain) - 1):
            eids.append(len(edges))
            edges.append((chain[q], chain[q + 1], "wall", (s, k, q)))
        first_piece[ci] = eids[0]
        last_piece[ci] = eids[-1]
        for idx, pair in enumerate(seq[ci]):
            piece_before[(ci, pair)] = eids[idx]
            piece_after[(ci, pair)] = eids[idx + 1]

    star: dict[int, list] = {}
    for v, slots in data.bstar.items():
        out = []
        for desc in slots:
            if desc[0] == "seg":
                _kind, ei, at_tail = desc
                out.append(2 * ei if at_tail else 2 * ei + 1)
            else:
                _kind, ci, end = desc
                out.append(2 * first_piece[ci] if end == 0
                           else 2 * last_piece[ci] + 1)
        star[v] = out
    for pair in data.xlist:
        ci, cj = pair
        i_fwd = 2 * piece_after[(ci, pair)]
        i_bwd = 2 * piece_before[(ci, pair)] + 1
        j_fwd = 2 * piece_after[(cj, pair)]
        j_bwd = 2 * piece_before[(cj, pair)] + 1
        if data.xsign[pair] > 0:
            star[xvid[pair]] = [i_fwd, j_fwd, i_bwd, j_bwd]
        else:
            star[xvid[pair]] = [i_fwd, j_bwd, i_bwd, j_fwd]

    slot = {}
    for v, hs in star.items():
        for idx, h in enumerate(hs):
            slot[h] = idx

    def next_he(h):
        twin = h ^ 1
        va, vb, _k, _i = edges[h // 2]
        head = vb if h % 2 == 0 else va
        hs = star[head]
        return hs[(slot[twin] - 1) % len(hs)]

    face_of = [-1] * (2 * len(edges))
    faces = []
    for h0 in range(2 * len(edges)):
        if face_of[h0] != -1:
            continue
        cycle = []
        h = h0
        while face_of[h] == -1:
            face_of[h] = len(faces)
            cycle.append(h)
            h = next_he(h)
        assert h == h0, "face tracing did not close up"
        faces.append(cycle)

    # the boundary runs counterclockwise, so every outward subsegment
    # half-edge must see the single outer face on its left
    outer = face_of[1]
    seg_half = {}
    for ei, (_va, _vb, kind, info) in enumerate(edges):
        if kind != "seg":
            continue
        assert face_of[2 * ei + 1] == outer, "outer face is not connected"
        seg_half[info] = 2 * ei

    return _Chart(kinds=kinds, edges=edges, faces=faces, face_of=face_of,
                  outer=outer, seg_half=seg_half)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


@dataclass
class Cycle:
    """One boundary cycle of a complement region."""

    kind: str            # "curve" or "sigma"
    corners: list        # ("corner", key, arr, arr_ahead, leave, leave_back)
    passes: list         # ("pass", token, strand, insert_lo, arrive_inst, leave_inst)
    items: list          # corners and passes interleaved, walk order


@dataclass
class Region:
    cells: int
    chi: int
    cycles: list


class CellComplex:
    """Glued chord arrangement of a strand configuration.

    The straight-chord coordinates are computed once; the subdivision is a
    function of the current per-chord crossing sequences, which triple flips
    vary over all realizable resolutions.
    """

    def __init__(self, tri, strands, orders, data_cache=None):
        self.tri = tri
        self.strands = strands
        self.orders = orders
        cache = data_cache if data_cache is not None else {}
        datas = None
        for attempt in range(40):
            try:
                datas = [
                    self._data_for(t, attempt, cache)
                    for t in range(tri.num_triangles)
                ]
                break
            except Degenerate:
                continue
        assert datas is not None, "no generic chart coordinates found"
        self.datas = datas
        self.seq = {t: {ci: list(lst) for ci, lst in d.init_seq.items()}
                    for t, d in enumerate(datas)}
        self._refresh()

    def _data_for(self, t: int, attempt: int, cache: dict) -> _ChartData:
        """Chart data, memoized on the triangle's side orders.

        The cache is only valid for one fixed strand set; callers reset it
        whenever the strands change."""
        sides = tuple(
            (eid, tuple(self.orders.get(eid, ())))
            for eid in sorted(
                {self.tri.edge_of_side[(t, s)]
                 for s in range(3) if (t, s) in self.tri.edge_of_side}
            )
        )
        key = (t, attempt, sides)
        hit = cache.get(key)
        if hit is None:
            try:
                hit = _chart_data(self.tri, self.strands, self.orders, t, attempt)
            except Degenerate as exc:
                cache[key] = exc
                raise
            cache[key] = hit
        elif isinstance(hit, Degenerate):
            raise hit
        return hit

    # -- state handling ---------------------------------------------------

    def _refresh(self) -> None:
        self.charts = [
            _chart_map(d, self.seq[t]) for t, d in enumerate(self.datas)
        ]
        self._glue_cells()

    def set_seq(self, seq) -> None:
        self.seq = seq
        self._refresh()

    def seq_key(self):
        return tuple(
            tuple(tuple(self.seq[t][ci]) for ci in sorted(self.seq[t]))
            for t in sorted(self.seq)
        )

    def flip_candidates(self):
        """Empty triangles of three mutually crossing chords, flippable."""
        out = []
        for t, chart in enumerate(self.charts):
            for fi, cycle in enumerate(chart.faces):
                if fi == chart.outer or len(cycle) != 3:
                    continue
                infos = [chart.edges[h // 2] for h in cycle]
                if any(e[2] != "wall" for e in infos):
                    continue
                cis = {self.datas[t].ci_of[e[3][:2]] for e in infos}
                if len(cis) == 3:
                    out.append((t, tuple(sorted(cis))))
        return out

    def flipped(self, t, trip):
        """Crossing sequences after sliding one chord across the others."""
        new = {u: {ci: list(lst) for ci, lst in d.items()}
               for u, d in self.seq.items()}
        ci, cj, ck = trip
        for a, b, c in ((ci, cj, ck), (cj, ci, ck), (ck, ci, cj)):
            p1 = tuple(sorted((a, b)))
            p2 = tuple(sorted((a, c)))
            lst = new[t][a]
            i1, i2 = lst.index(p1), lst.index(p2)
            assert abs(i1 - i2) == 1, "flip triangle is not innermost"
            lst[i1], lst[i2] = lst[i2], lst[i1]
        return new

    # -- gluing and regions ----------------------------------------------

    def _glue_cells(self) -> None:
        tri = self.tri
        self.uf = _UnionFind()
        self.glued: dict[tuple[int, int], tuple[int, int]] = {}
        for eid, (s1, s2) in enumerate(tri.edge_sides):
            m = len(self.orders.get(eid, []))
            t1, side1 = s1
            for sub in range(m + 1):
                h1 = (t1, self.charts[t1].seg_half[(side1, sub)])
                if s2 is None:
                    continue
                t2, side2 = s2
                h2 = (t2, self.charts[t2].seg_half[(side2, sub)])
                self.glued[h1] = h2
                self.glued[h2] = h1
                self.uf.union(self._cell(h1), self._cell(h2))
        for t, chart in enumerate(self.charts):
            for fi in range(len(chart.faces)):
                if fi != chart.outer:
                    self.uf.find((t, fi))

    def _cell(self, h: tuple[int, int]):
        t, he = h
        return (t, self.charts[t].face_of[he])

    def regions(self) -> dict:
        """Complement regions with Euler characteristic and boundary cycles."""
        cells_of: dict = {}
        for t, chart in enumerate(self.charts):
            for fi in range(len(chart.faces)):
                if fi == chart.outer:
                    continue
                cells_of.setdefault(self.uf.find((t, fi)), []).append((t, fi))

        out = {}
        for root, cells in cells_of.items():
            out[root] = self._classify(root, cells)
        return out

    def _classify(self, root, cells) -> Region:
        half_edges = []
        for t, fi in cells:
            chart = self.charts[t]
            half_edges.extend((t, h) for h in chart.faces[fi])
        hset = set(half_edges)
        glue_pairs = set()
        for h in half_edges:
            partner = self.glued.get(h)
            if partner is not None:
                assert partner in hset, "glued subsegment leaves the region"
                glue_pairs.add(frozenset((h, partner)))

        # corner orbits: corner(h) sits at the tail of h inside its face cycle
        cuf = _UnionFind()
        nxt = {}
        for t, fi in cells:
            cycle = self.charts[t].faces[fi]
            for idx, h in enumerate(cycle):
                nxt[(t, h)] = (t, cycle[(idx + 1) % len(cycle)])
                cuf.find((t, h))
        for pair in glue_pairs:
            h1, h2 = tuple(pair)
            cuf.union(h1, nxt[h2])
            cuf.union(h2, nxt[h1])
        corners = len({cuf.find(h) for h in half_edges})
        ecount = len(half_edges) - len(glue_pairs)
        chi = corners - ecount + len(cells)

        cycles = self._boundary_cycles(hset)
        return Region(cells=len(cells), chi=chi, cycles=cycles)

    def _boundary_cycles(self, hset) -> list:
        walls = [h for h in hset if h not in self.glued]
        nxt = {}
        for t, h in walls:
            cur = (t, h)
            step = self._face_next(cur)
            while step in self.glued:
                step = self._face_next(self.glued[step])
            nxt[cur] = step
        cycles = []
        seen = set()
        for start in walls:
            if start in seen:
                continue
            cycle_hes = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                cycle_hes.append(cur)
                cur = nxt[cur]
            assert cur == start, "boundary walk did not close up"
            cycles.append(self._emit_cycle(cycle_hes))
        return cycles

    def _face_next(self, h: tuple[int, int]):
        t, he = h
        chart = self.charts[t]
        fi = chart.face_of[he]
        cycle = chart.faces[fi]
        return (t, cycle[(cycle.index(he) + 1) % len(cycle)])

    def _edge_info(self, h: tuple[int, int]):
        t, he = h
        _va, _vb, kind, info = self.charts[t].edges[he // 2]
        return kind, info

    def _chord_end_token(self, h: tuple[int, int], ahead: bool):
        """Endpoint token of the chord carrying ``h``, ahead of or behind the
        walk direction of ``h``."""
        t, he = h
        kind, info = self._edge_info(h)
        assert kind == "wall"
        s, k, _piece = info
        n = len(self.strands[s])
        forward = he % 2 == 0
        if ahead:
            return (s, k) if forward else (s, (k - 1) % n)
        return (s, (k - 1) % n) if forward else (s, k)

    def _insert_lo(self, h: tuple[int, int]) -> bool:
        """True when a strand pushed just off this wall, away from the region,
        crosses the edge below the end token in canonical rank order."""
        t, he = h
        kind, info = self._edge_info(h)
        assert kind == "wall"
        ci = self.datas[t].ci_of[info[:2]]
        return self.datas[t].pass_lo[(ci, he % 2 == 0)]

    def _emit_cycle(self, hes) -> Cycle:
        items = []
        kinds_seen = set()
        for idx, h in enumerate(hes):
            t, he = h
            chart = self.charts[t]
            kind, info = self._edge_info(h)
            kinds_seen.add(kind)
            h2 = hes[(idx + 1) % len(hes)]
            if kind != "wall":
                continue
            # junction vertex between h and h2
            _va, vb = chart.he_ends(he)
            vkind = chart.kinds[vb]
            if vkind[0] == "x":
                _k2, info2 = self._edge_info(h2)
                items.append((
                    "corner",
                    vkind[1],
                    info[:2],
                    self._chord_end_token(h, ahead=True),
                    info2[:2],
                    self._chord_end_token(h2, ahead=False),
                ))
            elif vkind[0] == "tok":
                tok, side = vkind[1], vkind[2]
                t2, he2 = h2
                chart2 = self.charts[t2]
                _k2, info2 = self._edge_info(h2)
                va2, _vb2 = chart2.he_ends(he2)
                vkind2 = chart2.kinds[va2]
                assert vkind2[0] == "tok" and vkind2[1] == tok, \
                    "walk did not continue through the same crossing point"
                side2 = vkind2[2]
                items.append((
                    "pass", tok, info[0], self._insert_lo(h), (t, side), (t2, side2),
                ))
            else:
                raise AssertionError("curve wall ends at a triangle corner")
        if "wall" not in kinds_seen:
            return Cycle(kind="sigma", corners=[], passes=[], items=[])
        assert "seg" not in kinds_seen, "mixed curve and surface boundary cycle"
        corners = [it for it in items if it[0] == "corner"]
        passes = [it for it in items if it[0] == "pass"]
        return Cycle(kind="curve", corners=corners, passes=passes, items=items)


def build(tri, strands, orders) -> dict:
    """Regions of the complement at the initial crossing resolution."""
    return CellComplex(tri, strands, orders).regions()


def reducible_faces(regions: dict) -> list:
    """Monogon and bigon disk regions, most easily removed first."""
    out = []
    for region in regions.values():
        if region.chi != 1 or len(region.cycles) != 1:
            continue
        cycle = region.cycles[0]
        if cycle.kind != "curve":
            continue
        ncor = len(cycle.corners)
        if ncor == 1:
            out.append((1, cycle))
        elif ncor == 2:
            k1, k2 = cycle.corners[0][1], cycle.corners[1][1]
            if k1 != k2:
                out.append((2, cycle))
    out.sort(key=lambda item: (item[0], item[1].corners[0][1]))
    return out
