"""Parser, edge classes, orientation signs, and normal paths."""

import copy
import json

import pytest

from cvol.errors import TriangulationError
from cvol.geometry import EDGE_SLOT
from cvol.triangulation import (
    edge_classes,
    edge_loop,
    face_classes,
    orientation_signs,
    parse_triangulation,
    path_passes,
    vertex_classes,
    vertex_link_cycles,
)


class TestParser:
    def test_fixture_parses(self, fig8_doc):
        tri = parse_triangulation(fig8_doc)
        assert tri.num_tetrahedra == 2
        assert len(face_classes(tri)) == 4
        assert len(tri.cusp_paths) == 2

    def test_face_glued_to_itself_rejected(self):
        doc = {
            "name": "bad",
            "tetrahedra": [
                {"gluings": [{"tet": 0, "perm": [0, 1, 2, 3]}] * 4}
            ],
        }
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_non_inverse_permutation_rejected(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc["tetrahedra"][0]["gluings"][0]["perm"] = [1, 0, 2, 3]
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_unknown_keys_rejected(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc["extra"] = 1
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_malformed_permutation_rejected(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc["tetrahedra"][0]["gluings"][0]["perm"] = [0, 0, 2, 3]
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_unlinked_cusp_path_rejected(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc["cusp_paths"] = [[
            {"tet": 0, "enter_face": 0, "exit_face": 1},
            {"tet": 0, "enter_face": 0, "exit_face": 1},
        ]]
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_shapes_hint_round_trip(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc["shapes"] = [[0.5, 0.8], [0.5, 0.9]]
        tri = parse_triangulation(doc)
        assert tri.shape_hints == [0.5 + 0.8j, 0.5 + 0.9j]

    def test_json_string_accepted(self, fig8_doc):
        tri = parse_triangulation(json.dumps(fig8_doc))
        assert tri.num_tetrahedra == 2


class TestEdgeClasses:
    def test_two_classes_of_valence_six(self, fig8):
        classes = edge_classes(fig8)
        assert len(classes) == 2
        assert [e.valence for e in classes] == [6, 6]

    def test_total_incidences(self, fig8):
        classes = edge_classes(fig8)
        assert sum(e.valence for e in classes) == 6 * fig8.num_tetrahedra

    def test_each_slot_in_one_class(self, fig8):
        classes = edge_classes(fig8)
        seen = set()
        for e in classes:
            for tet, pair, _ in e.incidences:
                assert (tet, pair) not in seen
                seen.add((tet, pair))
        assert len(seen) == 12

    def test_edge_count_equals_tet_count(self, fig8):
        # ideal triangulation of a cusped manifold
        assert len(edge_classes(fig8)) == fig8.num_tetrahedra


class TestOrientation:
    def test_fixture_orientable_all_plus(self, fig8):
        assert orientation_signs(fig8) == [1, 1]

    def test_orientation_reversing_gluing_rejected(self, fig8_doc):
        doc = copy.deepcopy(fig8_doc)
        doc.pop("cusp_paths", None)
        # swap two values in one gluing pair (keeping the involution) to make
        # the permutation parity flip
        g = doc["tetrahedra"][0]["gluings"][0]
        perm = list(g["perm"])
        # find the inverse entry on the glued side
        other_tet = g["tet"]
        f_img = perm[0]
        composed = [None] * 4
        # compose with a transposition of two non-face slots on the target
        swap = {0: 0, 1: 1, 2: 2, 3: 3}
        a, b = [v for v in range(4) if v != f_img][:2]
        swap[a], swap[b] = swap[b], swap[a]
        new_perm = [swap[v] for v in perm]
        doc["tetrahedra"][0]["gluings"][0]["perm"] = new_perm
        inverse = [new_perm.index(v) for v in range(4)]
        doc["tetrahedra"][other_tet]["gluings"][f_img]["perm"] = inverse
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)


class TestNormalPaths:
    def test_edge_loop_structure(self, fig8):
        for e in edge_classes(fig8):
            loop = edge_loop(fig8, e)
            assert len(loop) == e.valence
            passes = path_passes(fig8, loop)
            passed_pairs = {(t, pair) for t, pair, _ in passes}
            incidence_pairs = {(t, pair) for t, pair, _ in e.incidences}
            assert passed_pairs == incidence_pairs

    def test_edge_loop_signs_constant(self, fig8):
        for e in edge_classes(fig8):
            signs = {s for *_, s in path_passes(fig8, edge_loop(fig8, e))}
            assert len(signs) == 1

    def test_reversed_path_negates_signs(self, fig8):
        loop = edge_loop(fig8, edge_classes(fig8)[0])
        forward = [s for *_, s in path_passes(fig8, loop)]
        backward = [s for *_, s in path_passes(fig8, loop.reversed())]
        assert backward == [-s for s in reversed(forward)]

    def test_cusp_path_passes(self, fig8):
        # hand-traced on the fixture: each step passes the edge disjoint
        # from its entry and exit faces
        for path in fig8.cusp_paths:
            passes = path_passes(fig8, path)
            for step, (tet, pair, _sign) in zip(path.steps, passes):
                assert tet == step.tet
                assert set(pair) == {0, 1, 2, 3} - {step.enter_face,
                                                    step.exit_face}

    def test_edge_loop_z2_passes_even(self, fig8):
        # evenness of 02/13 passes around every edge (the parity claim for
        # flattenings with all indices zero, equivalently evenness of the
        # beta*(omega) defect)
        for e in edge_classes(fig8):
            loop = edge_loop(fig8, e)
            count = sum(
                1 for _, pair, _s in path_passes(fig8, loop)
                if EDGE_SLOT[pair] == 2
            )
            assert count % 2 == 0

    def test_vertex_link_cycles_close(self, fig8):
        cycles = vertex_link_cycles(fig8)
        assert cycles, "state graph has cycles"
        from cvol.triangulation import validate_normal_path

        for path in cycles[:50]:
            validate_normal_path(fig8, path)


class TestVertexClasses:
    def test_single_cusp(self, fig8):
        assert len(vertex_classes(fig8)) == 1


class TestSpecExamples:
    def test_missing_gluings_rejected(self):
        # boundary faces are not supported: every face must be glued
        doc = {"name": "open", "tetrahedra": [{"gluings": []}]}
        with pytest.raises(TriangulationError):
            parse_triangulation(doc)

    def test_global_sign_flip_also_consistent(self, fig8):
        # the sign rule eps' = -sign(perm) * eps is invariant under a global
        # flip, so the assignment is unique only up to one per component
        from cvol.triangulation import perm_parity

        signs = orientation_signs(fig8)
        for flip in (1, -1):
            flipped = [flip * s for s in signs]
            for t in range(fig8.num_tetrahedra):
                for f in range(4):
                    g = fig8.gluing(t, f)
                    assert flipped[g.tet] == -perm_parity(g.perm) * flipped[t]

    def test_fixture_meridian_passed_edges(self, fig8):
        # hand-traced: each step passes the edge disjoint from its faces
        path = fig8.cusp_paths[0]
        passes = path_passes(fig8, path)
        traced = [(t, pair) for t, pair, _ in passes]
        expected = [
            (s.tet, tuple(sorted(set(range(4)) - {s.enter_face, s.exit_face})))
            for s in path.steps
        ]
        assert traced == expected


class TestEdgeClassEndpoints:
    def test_endpoints_in_vertex_classes(self, fig8):
        links = vertex_classes(fig8)
        for e in edge_classes(fig8):
            for slot in e.endpoints():
                assert any(slot in orbit for orbit in links)
