"""Gluing equations and the Newton shape solver."""

import cmath
import math

import numpy as np
import pytest

from cvol.errors import ConvergenceError, DegenerateGeometryError
from cvol.gluing import gluing_equations, solve_shapes
from cvol.polylog import bloch_wigner

REGULAR = cmath.exp(1j * math.pi / 3)


class TestGluingEquations:
    def test_fixture_structure(self, fig8):
        system = gluing_equations(fig8)
        assert system.edge_rows.shape == (2, 2, 3)
        assert system.cusp_rows.shape == (2, 2, 3)
        assert not system.edge_flattened_only

    def test_edge_row_sum_identity(self, fig8):
        # each tetrahedron contributes every slot twice in total, so the
        # summed edge equations read 2(log z + log z' + log z'') per tet
        # with total target 2 pi i * (number of edges)
        system = gluing_equations(fig8)
        total = system.edge_rows.sum(axis=0)
        assert (total == 2).all()

    def test_no_cusp_paths_flagged(self, fig8_doc):
        import copy

        doc = copy.deepcopy(fig8_doc)
        doc.pop("cusp_paths")
        from cvol.triangulation import parse_triangulation

        system = gluing_equations(parse_triangulation(doc))
        assert system.edge_flattened_only

    def test_residual_at_solution(self, fig8):
        system = gluing_equations(fig8)
        res = system.residual([REGULAR, REGULAR])
        assert float(np.max(np.abs(res))) < 1e-12


class TestSolveShapes:
    def test_converges_to_regular(self, fig8):
        solution = solve_shapes(fig8)
        for z in solution.shapes:
            assert abs(z - REGULAR) < 1e-10
        assert solution.residual < 1e-12
        assert solution.geometric

    def test_solved_initial_needs_no_iterations(self, fig8):
        solution = solve_shapes(fig8, initial=[REGULAR, REGULAR])
        assert solution.iterations == 0

    def test_real_initial_rejected(self, fig8):
        with pytest.raises(DegenerateGeometryError):
            solve_shapes(fig8, initial=[0.5, 0.5])

    def test_volume_positive_for_geometric(self, fig8):
        solution = solve_shapes(fig8)
        assert sum(bloch_wigner(z) for z in solution.shapes) > 0

    def test_various_initials_converge(self, fig8):
        import random

        rng = random.Random(0)
        for _ in range(10):
            initial = [
                complex(rng.uniform(0.2, 0.8), rng.uniform(0.4, 1.2))
                for _ in range(2)
            ]
            solution = solve_shapes(fig8, initial=initial)
            for z in solution.shapes:
                assert abs(z - REGULAR) < 1e-10

    def test_max_iter_enforced(self, fig8):
        with pytest.raises(ConvergenceError):
            solve_shapes(fig8, initial=[5 + 5j, -5 + 5j], max_iter=1)

    def test_edge_and_cusp_sums_at_solution(self, fig8):
        solution = solve_shapes(fig8)
        system = gluing_equations(fig8)
        res = system.residual(solution.shapes)
        n_edges = len(system.edge_rows)
        assert float(np.max(np.abs(res[:n_edges]))) < 1e-12
        assert float(np.max(np.abs(res[n_edges:]))) < 1e-12

    def test_wrong_initial_count_rejected(self, fig8):
        with pytest.raises(ValueError):
            solve_shapes(fig8, initial=[REGULAR])
