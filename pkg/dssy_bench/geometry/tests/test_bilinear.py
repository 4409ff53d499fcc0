import numpy as np
import pytest

from dssy_bench.errors import BadParam, SingularMap
from dssy_bench.geometry import (
    REFERENCE_MIDPOINTS,
    REFERENCE_VERTICES,
    Quadrilateral,
    convexity_margin,
    decompose,
    decompose_many,
    forward_map,
    intermediate_quad,
    is_rectangle,
    jacobian,
    simple_map,
    simple_map_det,
)


@pytest.fixture
def kite():
    """The unit square with its fourth vertex lifted to (1, -0.5)."""
    return Quadrilateral([[1, 1], [-1, 1], [-1, -1], [1, -0.5]])


def random_convex_quad(rng):
    """A unit-scale convex quadrilateral: a perturbed square, randomly scaled."""
    while True:
        v = REFERENCE_VERTICES + rng.uniform(-0.3, 0.3, size=(4, 2))
        v = v * rng.uniform(0.5, 1.5) + rng.uniform(-1, 1, size=2)
        q = Quadrilateral(v)
        dec = decompose(q)
        if dec.det_A > 0 and convexity_margin(dec.s_tilde) > 0.05:
            return q, dec


class TestDecompose:
    def test_reference_square_is_identity(self):
        """The reference square decomposes into the identity map."""
        # Action
        dec = decompose(Quadrilateral(REFERENCE_VERTICES))

        # Assert
        np.testing.assert_allclose(dec.A, np.eye(2))
        np.testing.assert_allclose(dec.b, 0.0)
        np.testing.assert_allclose(dec.d, 0.0)
        np.testing.assert_allclose(dec.s_tilde, 0.0)

    def test_closed_form_on_kite(self, kite):
        """A, b, d and s follow the closed-form vertex combinations."""
        # Action
        dec = decompose(kite)

        # Assert
        np.testing.assert_allclose(dec.A, [[1.0, 0.0], [0.125, 0.875]])
        np.testing.assert_allclose(dec.b, [0.0, 0.125])
        np.testing.assert_allclose(dec.d, [0.0, -0.125])
        np.testing.assert_allclose(dec.s_tilde, [0.0, -1.0 / 7.0], atol=1e-15)
        np.testing.assert_allclose(dec.A @ dec.s_tilde, dec.d, atol=1e-15)

    def test_parallelogram_has_no_bilinear_part(self):
        """Opposite sides parallel means the alternating vertex sum vanishes."""
        # Setup
        q = Quadrilateral([[3, 2], [1, 1.5], [0, 0], [2, 0.5]])

        # Action
        dec = decompose(q)

        # Assert
        np.testing.assert_allclose(dec.d, 0.0, atol=1e-15)
        np.testing.assert_allclose(dec.s_tilde, 0.0, atol=1e-15)
        assert is_rectangle(dec, q.diameter)

    @pytest.mark.parametrize("vertices", [
        [[1, 1], [1, 1], [1, 1], [1, 1]],
        [[0, 0], [1, 0], [2, 0], [3, 0]],
    ])
    def test_degenerate_quads_raise(self, vertices):
        """Collapsed cells have a singular affine part."""
        with pytest.raises(SingularMap):
            decompose(Quadrilateral(vertices))

    def test_bad_shape_is_rejected(self):
        with pytest.raises(BadParam):
            Quadrilateral([[0, 0], [1, 0], [1, 1]])

    def test_vectorised_decomposition_matches(self, kite):
        """decompose_many agrees with the single-cell path."""
        # Setup
        stack = np.stack([kite.v, REFERENCE_VERTICES])

        # Action
        A, b, d, s, det = decompose_many(stack)

        # Assert
        dec = decompose(kite)
        np.testing.assert_allclose(A[0], dec.A)
        np.testing.assert_allclose(s[0], dec.s_tilde, atol=1e-15)
        np.testing.assert_allclose(det, [dec.det_A, 1.0])


class TestForwardMap:
    def test_identity_on_reference_square(self):
        dec = decompose(Quadrilateral(REFERENCE_VERTICES))
        np.testing.assert_allclose(forward_map(dec, [0.3, -0.7]), [0.3, -0.7])

    def test_center_maps_to_b(self, kite):
        dec = decompose(kite)
        np.testing.assert_allclose(forward_map(dec, [0.0, 0.0]), dec.b)

    def test_kite_vertex(self, kite):
        dec = decompose(kite)
        np.testing.assert_allclose(forward_map(dec, [1.0, -1.0]), [1.0, -0.5])

    def test_vertex_reproduction_and_composition(self):
        """F reproduces vertices and equals the affine map after S."""
        # Setup
        rng = np.random.default_rng(2024)

        for _ in range(1000):
            q, dec = random_convex_quad(rng)
            xhat = rng.uniform(-1, 1, size=2)

            # Action
            direct = forward_map(dec, xhat)
            composed = dec.A @ simple_map(dec.s_tilde, xhat) + dec.b

            # Assert
            assert np.linalg.norm(direct - composed) <= 1e-13
            np.testing.assert_allclose(
                forward_map(dec, REFERENCE_VERTICES), q.v, atol=1e-13)

    def test_agrees_with_vertex_interpolation_form(self, kite):
        """The decomposed map equals the classical vertex interpolation."""
        # Setup
        dec = decompose(kite)
        v1, v2, v3, v4 = kite.v
        xhat = np.array([0.2, -0.6])
        x1, x2 = xhat

        # Action
        classical = (v1 + (1 - x1) / 2 * (v2 - v1) + (1 - x2) / 2 * (v4 - v1)
                     + (1 - x1) * (1 - x2) / 4 * (v1 - v2 + v3 - v4))

        # Assert
        np.testing.assert_allclose(forward_map(dec, xhat), classical)


class TestJacobian:
    def test_affine_cell_has_constant_jacobian(self):
        dec = decompose(Quadrilateral([[3, 2], [1, 1.5], [0, 0], [2, 0.5]]))
        for xhat in ([0.1, 0.2], [-0.9, 0.4]):
            np.testing.assert_allclose(jacobian(dec, xhat), dec.A)

    def test_center_jacobian_is_A(self, kite):
        dec = decompose(kite)
        np.testing.assert_allclose(jacobian(dec, [0.0, 0.0]), dec.A)

    def test_matches_central_differences(self):
        """Analytic Jacobian agrees with finite differences of F."""
        # Setup
        rng = np.random.default_rng(5)
        step = 1e-6

        for _ in range(100):
            _, dec = random_convex_quad(rng)
            xhat = rng.uniform(-1, 1, size=2)

            # Action
            fd = np.empty((2, 2))
            for k in range(2):
                e = np.zeros(2)
                e[k] = step
                fd[:, k] = (forward_map(dec, xhat + e)
                            - forward_map(dec, xhat - e)) / (2 * step)

            # Assert
            np.testing.assert_allclose(jacobian(dec, xhat), fd, atol=1e-8)

    def test_batched_points(self, kite):
        dec = decompose(kite)
        pts = np.array([[0.0, 0.0], [0.5, -0.5], [1.0, 1.0]])
        jac = jacobian(dec, pts)
        assert jac.shape == (3, 2, 2)
        np.testing.assert_allclose(jac[1], jacobian(dec, pts[1]))


class TestSimpleMap:
    @pytest.mark.parametrize("s", [[0.0, 0.0], [0.3, -0.2], [0.6, 0.35]])
    def test_midpoints_are_fixed(self, s):
        np.testing.assert_array_equal(
            simple_map(np.array(s), REFERENCE_MIDPOINTS), REFERENCE_MIDPOINTS)

    def test_intermediate_midpoints_are_reference_midpoints(self):
        quad = intermediate_quad([0.2, -0.3])
        np.testing.assert_allclose(quad.midpoints, REFERENCE_MIDPOINTS)
        np.testing.assert_allclose(
            simple_map([0.2, -0.3], REFERENCE_VERTICES), quad.vt)

    def test_determinant(self):
        s = np.array([0.25, -0.1])
        xhat = np.array([0.4, 0.7])
        jac = np.eye(2) + np.outer(s, [xhat[1], xhat[0]])
        assert simple_map_det(s, xhat) == pytest.approx(np.linalg.det(jac))


class TestConvexityMargin:
    @pytest.mark.parametrize("s, expected", [
        ((0.0, 0.0), 1.0),
        ((0.5, 0.5), 0.0),
        ((0.3, -0.2), 0.5),
    ])
    def test_values(self, s, expected):
        assert convexity_margin(s) == pytest.approx(expected)
