import numpy as np
import pytest

from dssy_bench.assembly import (
    ElementParams,
    LocalMatrices,
    local_matrices,
    recover_interior,
    static_condense,
)
from dssy_bench.errors import BadParam, NotUnisolvent, SingularInterior
from dssy_bench.geometry import (
    REFERENCE_VERTICES,
    Quadrilateral,
    intermediate_quad,
)


@pytest.fixture
def trapezoid():
    return Quadrilateral([[1.0, 1.1], [0.0, 0.9], [0.0, 0.0], [1.0, 0.0]])


@pytest.fixture
def random_cell(rng):
    while True:
        v = REFERENCE_VERTICES + rng.uniform(-0.3, 0.3, size=(4, 2))
        q = Quadrilateral(0.1 * v + 0.5)
        loc = local_matrices(q, 'np', 'poisson')
        if loc.det_A > 0 and 1 - np.abs(loc.s_tilde).sum() > 0.1:
            return q


class TestLocalMatricesPoisson:
    @pytest.mark.parametrize("kind", ['np', 'p'])
    def test_symmetric(self, trapezoid, kind):
        K = local_matrices(trapezoid, kind, 'poisson').K
        np.testing.assert_allclose(K, K.T, atol=1e-13)

    def test_constant_mode_in_kernel(self, trapezoid):
        loc = local_matrices(trapezoid, 'np', 'poisson')
        np.testing.assert_allclose(loc.K @ np.ones(4), 0.0, atol=1e-12)

    def test_constant_mode_with_cell_dof(self, trapezoid):
        """The interpolant of 1 has zero moment against x1 x2."""
        loc = local_matrices(trapezoid, 'p', 'poisson')
        assert loc.size == 5
        assert loc.interior == (4,)
        np.testing.assert_allclose(loc.K @ [1, 1, 1, 1, 0], 0.0, atol=1e-12)

    def test_reference_square_dssy_energy(self):
        """psi^_1 has energy 1184/63 on the reference square."""
        # Setup
        loc = local_matrices(Quadrilateral(REFERENCE_VERTICES), 'np', 'poisson')
        psi_at_midpoints = np.array([-2, 2, -2, 2]) / 3

        # Action
        energy = psi_at_midpoints @ loc.K @ psi_at_midpoints

        # Assert
        assert energy == pytest.approx(1184 / 63, rel=1e-12)

    def test_square_cell_agrees_between_kinds(self):
        """On a square both elements are the classical DSSY space."""
        quad = Quadrilateral(0.25 * REFERENCE_VERTICES + 0.5)
        np_loc = local_matrices(quad, 'np', 'poisson')
        p_loc = local_matrices(quad, 'p', 'poisson')
        assert p_loc.interior == ()
        np.testing.assert_allclose(np_loc.K, p_loc.K, atol=1e-12)

    def test_load_of_unit_forcing_sums_to_area(self, trapezoid):
        loc = local_matrices(trapezoid, 'np', 'poisson',
                             forcing=lambda x: np.ones(len(x)))
        assert loc.F.sum() == pytest.approx(1.0)
        assert loc.area == pytest.approx(1.0)

    def test_exotic_ctilde_propagates(self):
        """A c~ at the root of the unisolvency determinant is rejected."""
        s = np.array([0.3, 0.2])
        quad = Quadrilateral(intermediate_quad(s).vt)
        c_bad = -(s @ s + 1 / 3) / np.prod(s)
        with pytest.raises(NotUnisolvent):
            local_matrices(quad, 'np', 'poisson', ElementParams(c_tilde=c_bad))

    @pytest.mark.parametrize("element, problem", [
        ('q1', 'poisson'), ('np', 'heat'), ('p', 'stokes'), ('p', 'elasticity'),
    ])
    def test_bad_kinds(self, trapezoid, element, problem):
        with pytest.raises(BadParam):
            local_matrices(trapezoid, element, problem)


class TestLocalMatricesVector:
    def test_stokes_divergence_of_linear_field(self, random_cell):
        """B applied to the interpolant of (x1, 0) gives -|K|."""
        # Setup
        loc = local_matrices(random_cell, 'np', 'stokes')
        u = np.concatenate([random_cell.midpoints[:, 0], np.zeros(4)])

        # Action & Assert
        assert loc.B.shape == (1, 8)
        assert loc.B[0] @ u == pytest.approx(-loc.area, rel=1e-12)

    def test_stokes_velocity_block(self, random_cell):
        stokes = local_matrices(random_cell, 'np', 'stokes')
        poisson = local_matrices(random_cell, 'np', 'poisson')
        np.testing.assert_allclose(stokes.K[:4, :4], poisson.K)
        np.testing.assert_allclose(stokes.K[4:, 4:], poisson.K)
        np.testing.assert_allclose(stokes.K[:4, 4:], 0.0)

    def test_elasticity_symmetric_with_translations_in_kernel(self,
                                                             random_cell):
        # Setup
        params = ElementParams(mu=2.0, lam=7.0)

        # Action
        K = local_matrices(random_cell, 'np', 'elasticity', params).K

        # Assert
        np.testing.assert_allclose(K, K.T, atol=1e-12 * np.abs(K).max())
        for u in ([1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]):
            np.testing.assert_allclose(K @ u, 0.0, atol=1e-11)

    def test_elasticity_energy_of_linear_field(self, random_cell):
        """u = (x1, x2): mu |grad u|^2 + (lam + mu) (div u)^2 = 2 mu + 4 (lam + mu)."""
        # Setup
        mu, lam = 1.5, 3.0
        loc = local_matrices(random_cell, 'np', 'elasticity',
                             ElementParams(mu=mu, lam=lam))
        u = np.concatenate([random_cell.midpoints[:, 0],
                            random_cell.midpoints[:, 1]])

        # Action
        energy = u @ loc.K @ u

        # Assert
        assert energy == pytest.approx((2 * mu + 4 * (lam + mu)) * loc.area,
                                       rel=1e-10)

    def test_vector_load_is_component_blocked(self, random_cell):
        loc = local_matrices(random_cell, 'np', 'stokes',
                             forcing=lambda x: np.tile([1.0, 0.0], (len(x), 1)))
        assert loc.F[:4].sum() == pytest.approx(loc.area)
        np.testing.assert_allclose(loc.F[4:], 0.0, atol=1e-15)


class TestStaticCondense:
    def test_zero_coupling_returns_edge_block(self):
        # Setup
        K = np.diag([2.0, 3.0, 4.0, 5.0, 6.0])
        loc = LocalMatrices(K=K, F=np.arange(5.0), interior=(4,))

        # Action
        condensed = static_condense(loc)

        # Assert
        np.testing.assert_allclose(condensed.K, K[:4, :4])
        np.testing.assert_allclose(condensed.F, np.arange(4.0))

    def test_matches_full_solve(self, rng):
        """Edge part of a dense 5x5 solve equals the condensed solve."""
        for _ in range(10):
            # Setup
            M = rng.uniform(-1, 1, size=(5, 5))
            K = M @ M.T + np.eye(5)
            F = rng.uniform(-1, 1, size=5)
            full = np.linalg.solve(K, F)

            # Action
            condensed = static_condense(
                LocalMatrices(K=K, F=F, interior=(4,)))
            u_e = np.linalg.solve(condensed.K, condensed.F)
            u_c = recover_interior(condensed.recovery, u_e)

            # Assert
            np.testing.assert_allclose(u_e, full[:4], atol=1e-12)
            np.testing.assert_allclose(u_c, full[4:], atol=1e-12)

    def test_no_interior_is_identity(self):
        loc = LocalMatrices(K=np.eye(4), F=np.ones(4))
        assert static_condense(loc) is loc

    def test_singular_interior(self):
        K = np.eye(5)
        K[4, 4] = 0.0
        with pytest.raises(SingularInterior):
            static_condense(LocalMatrices(K=K, F=np.ones(5), interior=(4,)))

    def test_parametric_cell_condenses_to_four(self, trapezoid):
        condensed = static_condense(local_matrices(trapezoid, 'p', 'poisson'))
        assert condensed.K.shape == (4, 4)
        np.testing.assert_allclose(condensed.K, condensed.K.T, atol=1e-13)
        np.testing.assert_allclose(condensed.K @ np.ones(4), 0.0, atol=1e-12)
