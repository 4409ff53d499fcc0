import numpy as np
import pytest

from dssy_bench.errors import BadParam, ConvexityFailure
from dssy_bench.geometry import decompose_many
from dssy_bench.mesh import random_mesh, theta_mesh


def margins(mesh):
    _, _, _, s, det = decompose_many(mesh.cell_vertices)
    assert np.all(det > 0)
    return 1.0 - np.abs(s).sum(axis=1)


class TestThetaMesh:
    def test_two_by_two_squares(self):
        # Action
        mesh = theta_mesh(2, 0.0)

        # Assert
        assert mesh.n_cells == 4
        assert mesh.n_edges == 12
        assert mesh.n_interior_edges == 4
        _, _, d, _, det = decompose_many(mesh.cell_vertices)
        np.testing.assert_allclose(d, 0.0, atol=1e-15)
        np.testing.assert_allclose(det, 1 / 16)

    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_edge_counts(self, n):
        mesh = theta_mesh(n, 0.7)
        assert mesh.n_interior_edges == 2 * n * (n - 1)
        assert mesh.n_edges == 2 * n * (n + 1)

    def test_twenty_four_interior_edges(self):
        assert theta_mesh(4, 0.7).n_interior_edges == 24

    def test_zigzag_offsets(self):
        """Interior rows alternate by +-theta/(2n); the boundary rows stay."""
        # Setup
        n, theta = 4, 0.7
        delta = theta / (2 * n)

        # Action
        mesh = theta_mesh(n, theta)

        # Assert
        # cell (0, 0): upper corners sit on row j = 1
        v = mesh.cell_vertices[0]
        assert v[0, 1] == pytest.approx(1 / n + delta)
        assert v[1, 1] == pytest.approx(1 / n - delta)
        np.testing.assert_allclose(v[2:, 1], 0.0)
        np.testing.assert_allclose(mesh.nodes[:, 0],
                                   np.tile(np.arange(n + 1) / n, n + 1))

    @pytest.mark.parametrize("theta", [0.0, 0.3, 0.7, 0.9])
    def test_cells_are_convex(self, theta):
        assert np.all(margins(theta_mesh(8, theta)) > 0)

    def test_mesh_size_scales_with_n(self):
        for n in (4, 8, 16):
            h = theta_mesh(n, 0.7).h
            assert 1.0 / n < h < 2.0 / n

    @pytest.mark.parametrize("n, theta", [(1, 0.5), (4, 1.0), (4, -0.1)])
    def test_bad_parameters(self, n, theta):
        with pytest.raises(BadParam):
            theta_mesh(n, theta)


class TestRandomMesh:
    def test_zero_perturbation_is_the_grid(self):
        np.testing.assert_array_equal(
            random_mesh(4, 0.0, 123).nodes, theta_mesh(4, 0.0).nodes)

    def test_deterministic_for_fixed_seed(self):
        first = random_mesh(8, 0.25, 42)
        second = random_mesh(8, 0.25, 42)
        np.testing.assert_array_equal(first.nodes, second.nodes)

    def test_seed_changes_nodes(self):
        assert not np.array_equal(random_mesh(8, 0.25, 1).nodes,
                                  random_mesh(8, 0.25, 2).nodes)

    def test_boundary_nodes_fixed_and_interior_bounded(self):
        # Setup
        n, alpha = 16, 0.25
        grid = theta_mesh(n, 0.0).nodes

        # Action
        mesh = random_mesh(n, alpha, 7)

        # Assert
        shift = mesh.nodes - grid
        on_boundary = np.any((grid == 0) | (grid == 1), axis=1)
        np.testing.assert_array_equal(shift[on_boundary], 0.0)
        assert np.all(np.abs(shift) <= alpha / n + 1e-15)
        assert np.all(margins(mesh) > 0)

    def test_violations_are_resampled(self, mocker):
        """A first draw with a folded cell is replaced by a fresh one."""
        # Setup
        mocked = mocker.patch('dssy_bench.mesh.generators._bad_cells',
                              side_effect=[np.array([0]), np.array([], int)])

        # Action
        random_mesh(4, 0.25, 3)

        # Assert
        assert mocked.call_count == 2

    def test_persistent_violation_raises(self, mocker):
        mocker.patch('dssy_bench.mesh.generators._bad_cells',
                     return_value=np.array([0]))
        with pytest.raises(ConvexityFailure):
            random_mesh(4, 0.25, 3)

    @pytest.mark.parametrize("alpha", [-0.1, 0.5, 0.7])
    def test_bad_alpha(self, alpha):
        with pytest.raises(BadParam):
            random_mesh(4, alpha, 1)
