"""Standard triangulated surfaces: assembly invariants and marking checks."""

import pytest

from curvekit._words import cyclic_reduce, inverse, rotations
from curvekit.errors import InvalidSignature
from curvekit.surface_model import (
    SurfaceSig,
    Triangulation,
    barycentric_subdivision,
    build_marked_any,
    build_standard,
    euler_characteristic,
)


class TestSignature:
    def test_parse_format(self):
        assert SurfaceSig.parse("g=2,b=0") == SurfaceSig(2, 0)
        assert SurfaceSig.parse("g=3") == SurfaceSig(3, 0)
        assert SurfaceSig.parse(" g=2 , b=1 ") == SurfaceSig(2, 1)
        assert SurfaceSig(2, 1).format() == "g=2,b=1"

    def test_parse_rejects_garbage(self):
        for text in ("genus=2", "g=x", "b=1", "g=2;b=1"):
            with pytest.raises(InvalidSignature):
                SurfaceSig.parse(text)

    def test_negative_rejected(self):
        with pytest.raises(InvalidSignature):
            SurfaceSig(-1, 0)

    def test_euler(self):
        assert SurfaceSig(2, 0).euler_characteristic == -2
        assert SurfaceSig(2, 1).euler_characteristic == -3
        assert euler_characteristic(SurfaceSig(3, 2)) == -6


class TestTriangulation:
    def test_two_triangle_sphere(self):
        glue = {}
        for a, b in (((0, 0), (1, 1)), ((0, 1), (1, 0)), ((0, 2), (1, 2))):
            glue[a] = b
            glue[b] = a
        tri = Triangulation([(0, 1, 2), (2, 1, 0)], glue, {}, 3)
        assert tri.euler_characteristic == 2
        assert tri.num_edges == 3

    def test_disk(self):
        tri = Triangulation([(0, 1, 2)], {}, {(0, 0): 0, (0, 1): 0, (0, 2): 0}, 3)
        assert tri.euler_characteristic == 1
        assert tri.num_boundary_components == 1

    def test_rejects_unassigned_side(self):
        with pytest.raises(ValueError):
            Triangulation([(0, 1, 2)], {}, {(0, 0): 0, (0, 1): 0}, 3)

    def test_rejects_parallel_gluing(self):
        glue = {(0, 0): (1, 0), (1, 0): (0, 0)}
        boundary = {(0, 1): 0, (0, 2): 0, (1, 1): 0, (1, 2): 0}
        with pytest.raises(ValueError):
            Triangulation([(0, 1, 2), (0, 1, 3)], glue, boundary, 4)

    def test_json_roundtrip(self, ms20):
        text = ms20.tri.to_json()
        back = Triangulation.from_json(text)
        assert back.to_json() == text
        assert back.euler_characteristic == -2

    def test_corner_rotation_closes(self, ms20):
        # rotating around the base vertex visits its whole cone and returns
        tri = ms20.tri
        start = None
        for t in range(tri.num_triangles):
            for i in range(3):
                if tri.triangles[t][i] == ms20.base_vertex:
                    start = (t, i)
                    break
            if start:
                break
        seen = set()
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = tri.next_corner(*cur)
            assert cur is not None
        assert cur == start
        assert len(seen) == 6


class TestBuildGates:
    def test_standard_needs_genus_two(self):
        for g, b in ((0, 3), (1, 0), (1, 1), (1, 5)):
            with pytest.raises(InvalidSignature):
                build_standard(SurfaceSig(g, b))

    def test_nonhyperbolic_rejected(self):
        for g, b in ((0, 0), (0, 1), (0, 2), (1, 0)):
            with pytest.raises(InvalidSignature):
                build_marked_any(SurfaceSig(g, b))

    def test_pieces_allowed(self):
        for g, b in ((0, 3), (0, 4), (1, 1), (1, 2)):
            ms = build_marked_any(SurfaceSig(g, b))
            assert ms.tri.euler_characteristic == 2 - 2 * g - b


class TestClosedGenusTwo:
    def test_counts(self, ms20):
        tri = ms20.tri
        assert tri.num_vertices == 10
        assert tri.num_edges == 36
        assert tri.num_triangles == 24
        assert tri.euler_characteristic == -2
        assert tri.num_boundary_components == 0

    def test_three_pants_curves(self, ms20):
        assert len(ms20.pants) == 3
        words = [ms20.group.format(p.word) for p in ms20.pants]
        assert words == ["a1", "a2", "a1b1A1B1"]

    def test_relation_is_standard_relator(self, ms20):
        core, _ = cyclic_reduce(ms20.relation)
        rel = ms20.group.relator
        assert core in set(rotations(rel)) | set(rotations(inverse(rel)))

    def test_deterministic(self):
        a = build_standard(SurfaceSig(2, 0)).to_json()
        b = build_standard(SurfaceSig(2, 0)).to_json()
        assert a == b


class TestGenusTwoOneBoundary:
    def test_counts(self, ms21):
        assert ms21.tri.euler_characteristic == -3
        assert ms21.tri.num_boundary_components == 1
        assert len(ms21.pants) == 4

    def test_boundary_word(self, ms21):
        words = ms21.group.boundary_words()
        assert [c.word for c in ms21.boundary_circles] == words

    def test_boundary_sides_form_circle(self, ms21):
        sides = ms21.tri.boundary_sides_of(0)
        assert len(sides) == 2
        ends = [ms21.tri.side_ends(s) for s in sides]
        # the two arcs share both endpoints, head to tail
        assert ends[0] == tuple(reversed(ends[1]))


class TestMarking:
    @pytest.mark.parametrize("g,b", [(2, 0), (2, 1), (2, 2), (3, 0), (1, 1), (0, 4)])
    def test_triangle_products_trivial(self, g, b):
        ms = build_marked_any(SurfaceSig(g, b))
        for t in range(ms.tri.num_triangles):
            word = ms.step_word([((t, 0), 1), ((t, 1), 1), ((t, 2), 1)])
            assert ms.group.is_trivial(word)

    @pytest.mark.parametrize("g,b", [(2, 0), (2, 1), (3, 0), (1, 2)])
    def test_generator_loops_realized(self, g, b):
        ms = build_marked_any(SurfaceSig(g, b))
        assert sorted(ms.generator_loops) == list(
            range(1, ms.group.alphabet.rank + 1)
        )
        for letter, loop in ms.generator_loops.items():
            assert ms.step_word(loop) == (letter,)
            # the loop is closed and based
            assert ms.step_ends(loop[0])[0] == ms.base_vertex
            assert ms.step_ends(loop[-1])[1] == ms.base_vertex
            for a, b_ in zip(loop, loop[1:]):
                assert ms.step_ends(a)[1] == ms.step_ends(b_)[0]

    @pytest.mark.parametrize("g,b", [(2, 0), (2, 1), (2, 2), (3, 1), (0, 5)])
    def test_pants_count(self, g, b):
        ms = build_marked_any(SurfaceSig(g, b))
        assert len(ms.pants) == 3 * g - 3 + b

    def test_pants_cycles_close(self, ms21):
        for p in ms21.pants:
            for a, b in zip(p.steps, p.steps[1:] + p.steps[:1]):
                assert ms21.step_ends(a)[1] == ms21.step_ends(b)[0]
            assert p.word == ms21.step_word(p.steps)

    def test_tree_paths(self, ms20):
        for v in range(ms20.tri.num_vertices):
            path = ms20.tree_path(v)
            cur = ms20.base_vertex
            for step in path:
                src, dst = ms20.step_ends(step)
                assert src == cur
                cur = dst
            assert cur == v


class TestFiller:
    @pytest.mark.parametrize("g,b", [(2, 0), (2, 1), (2, 2), (3, 0), (1, 1)])
    def test_crosses_each_pants_curve_twice(self, g, b):
        ms = build_marked_any(SurfaceSig(g, b))
        for p in ms.pants:
            curve_vertices = {ms.step_ends(s)[0] for s in p.steps}
            transits = sum(
                1
                for comp in ms.filler
                for st in comp.steps
                if ms.step_ends(st)[0] in curve_vertices
            )
            assert transits == 2

    def test_components_closed_and_essential(self, ms20):
        assert ms20.filler
        for comp in ms20.filler:
            for a, b in zip(comp.steps, comp.steps[1:] + comp.steps[:1]):
                assert ms20.step_ends(a)[1] == ms20.step_ends(b)[0]
            assert not ms20.group.is_trivial(comp.word)

    def test_runs_on_seams_and_cuff_arcs_only(self, ms21):
        seams = set(ms21.seam_sides)
        boundary_sides = set(ms21.tri.boundary)
        used_arcs = []
        for comp in ms21.filler:
            for s, _ in comp.steps:
                assert s in seams or s in boundary_sides
                if s in boundary_sides:
                    used_arcs.append(s)
        # detours ride each cuff arc at most once, so the curve stays embedded
        assert len(used_arcs) == len(set(used_arcs))


class TestVariants:
    @pytest.mark.parametrize("g,b", [(2, 0), (2, 1), (3, 0)])
    def test_variant_builds_agree_on_classes(self, g, b):
        base = build_marked_any(SurfaceSig(g, b))
        canon = base.group.canonical_cyclic
        base_classes = sorted(canon(p.word, unoriented=True) for p in base.pants)
        for variant in (1, 2, 5, 9):
            other = build_marked_any(SurfaceSig(g, b), variant=variant)
            classes = sorted(canon(p.word, unoriented=True) for p in other.pants)
            assert classes == base_classes
            assert other.tri.euler_characteristic == base.tri.euler_characteristic


class TestSubdivision:
    def test_counts_and_euler(self, ms20):
        fine = barycentric_subdivision(ms20.tri)
        tri = ms20.tri
        assert fine.num_triangles == 6 * tri.num_triangles
        assert fine.num_vertices == tri.num_vertices + tri.num_edges + tri.num_triangles
        assert fine.euler_characteristic == tri.euler_characteristic

    def test_boundary_preserved(self, ms21):
        fine = barycentric_subdivision(ms21.tri)
        assert fine.num_boundary_components == 1
        assert fine.euler_characteristic == -3
