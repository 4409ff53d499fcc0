"""
Nonparametric DSSY element on the intermediate quadrilateral.

Points x~ live on K~ = S(K^), the image of the reference square under the
simple bilinear map S(x) = x + x1 x2 s~. The local space is spanned by
1, x~1, x~2 and the quartic mu~ = -5/3 l1 l2 Q, where l1, l2 are the
diagonals of K~ and Q is a conic chosen so that every member of the span
has the mean value property on all four edges.
"""
from dataclasses import dataclass

import numpy as np

from dssy_bench.errors import Degenerate, NotUnisolvent
from dssy_bench.geometry import REFERENCE_MIDPOINTS, convexity_margin

XI = np.sqrt(3.0 / 5.0)
ETA = np.sqrt(2.0 / 5.0)

UNISOLVENCY_TOL = 1e-10 * 16.0 / 3.0

_U1 = np.array([1.0, 0.0])
_U2 = np.array([0.0, 1.0])


def _split(xt):
    xt = np.asarray(xt, dtype=float)
    return xt[..., 0], xt[..., 1]


def r2_tilde(s_tilde) -> float:
    s1, s2 = s_tilde
    return 6.0 / 25.0 * (2.5 - s1 ** 2 - s2 ** 2)


def ell(xt, s_tilde):
    """Diagonals of K~: l1 vanishes at v~1, v~3 and l2 at v~2, v~4."""
    x1, x2 = _split(xt)
    s1, s2 = s_tilde
    return x1 - x2 + s2 - s1, x1 + x2 + s1 + s2


def _shifted(xt, s_tilde):
    x1, x2 = _split(xt)
    s1, s2 = s_tilde
    return x1 + 0.4 * s2, x2 + 0.4 * s1


def q_tilde(xt, s_tilde, c_tilde: float = 0.0, r2_offset: float = 0.0):
    s1, s2 = s_tilde
    X, Y = _shifted(xt, s_tilde)
    return (X ** 2 + Y ** 2 - (r2_tilde(s_tilde) + r2_offset)
            + c_tilde * (X * Y + 6.0 / 25.0 * s1 * s2))


def q_tilde_grad(xt, s_tilde, c_tilde: float = 0.0):
    X, Y = _shifted(xt, s_tilde)
    return np.stack([2.0 * X + c_tilde * Y, 2.0 * Y + c_tilde * X], axis=-1)


def mu_tilde(xt, s_tilde, c_tilde: float = 0.0, r2_offset: float = 0.0):
    l1, l2 = ell(xt, s_tilde)
    return -5.0 / 3.0 * l1 * l2 * q_tilde(xt, s_tilde, c_tilde, r2_offset)


def mu_tilde_grad(xt, s_tilde, c_tilde: float = 0.0, r2_offset: float = 0.0):
    l1, l2 = ell(xt, s_tilde)
    q = q_tilde(xt, s_tilde, c_tilde, r2_offset)
    dq = q_tilde_grad(xt, s_tilde, c_tilde)
    # grad l1 = (1, -1), grad l2 = (1, 1)
    gx = l2 * q + l1 * q + l1 * l2 * dq[..., 0]
    gy = -l2 * q + l1 * q + l1 * l2 * dq[..., 1]
    return -5.0 / 3.0 * np.stack([gx, gy], axis=-1)


def span_eval(xt, s_tilde, c_tilde: float = 0.0):
    """Values (4, ...) and gradients (4, ..., 2) of 1, x~1, x~2, mu~."""
    x1, x2 = _split(xt)
    one, zero = np.ones_like(x1), np.zeros_like(x1)
    values = np.stack([one, x1, x2, mu_tilde(xt, s_tilde, c_tilde)])
    grads = np.stack([
        np.stack([zero, zero], axis=-1),
        np.stack([one, zero], axis=-1),
        np.stack([zero, one], axis=-1),
        mu_tilde_grad(xt, s_tilde, c_tilde),
    ])
    return values, grads


@dataclass(frozen=True, eq=False)
class EdgeGaussSet:
    """Gauss points of the four edges of K~, two per edge at +-xi and +-eta."""
    g: np.ndarray
    m: np.ndarray
    eta: np.ndarray


def edge_directions(s_tilde) -> np.ndarray:
    """Half edge vectors d_j with e~_j(t) = m^_j + t d_j, t in [-1, 1]."""
    s = np.asarray(s_tilde, dtype=float)
    return np.stack([_U2 + s, _U1 + s, _U2 - s, _U1 - s])


def _edge_pairs(directions, t):
    # first point of each pair: -t on edges 1 and 4, +t on edges 2 and 3
    signs = np.array([-1.0, 1.0, 1.0, -1.0])[:, None]
    first = REFERENCE_MIDPOINTS + signs * t * directions
    second = REFERENCE_MIDPOINTS - signs * t * directions
    return np.stack([first, second], axis=1).reshape(8, 2)


def edge_gauss_set(s_tilde) -> EdgeGaussSet:
    directions = edge_directions(s_tilde)
    return EdgeGaussSet(
        g=_edge_pairs(directions, XI),
        m=REFERENCE_MIDPOINTS.copy(),
        eta=_edge_pairs(directions, ETA),
    )


def mean_value_residual(s_tilde, c_tilde: float = 0.0,
                        r2_offset: float = 0.0) -> np.ndarray:
    """mu~(g~_{2j-1}) + mu~(g~_{2j}) - 2 mu~(m^_j) for the four edges."""
    gauss = edge_gauss_set(s_tilde)
    at_g = mu_tilde(gauss.g, s_tilde, c_tilde, r2_offset).reshape(4, 2)
    at_m = mu_tilde(gauss.m, s_tilde, c_tilde, r2_offset)
    return at_g.sum(axis=1) - 2.0 * at_m


def unisolvency_det(s_tilde, c_tilde: float = 0.0) -> float:
    s1, s2 = s_tilde
    return 16.0 * (s1 ** 2 + s2 ** 2 + 1.0 / 3.0 + c_tilde * s1 * s2)


def dof_matrix(s_tilde, c_tilde: float = 0.0) -> np.ndarray:
    """a[k, j] = phi~_k(m^_j) for phi~ = (1, x~1, x~2, mu~)."""
    values, _ = span_eval(REFERENCE_MIDPOINTS, s_tilde, c_tilde)
    return values


@dataclass(frozen=True, eq=False)
class NonparametricElement:
    """
    Nodal basis b_i = sum_k nodal[i, k] phi~_k with b_i(m^_j) = delta_ij.
    """
    s_tilde: np.ndarray
    c_tilde: float
    r2: float
    nodal: np.ndarray

    def evaluate(self, xt) -> np.ndarray:
        values, _ = span_eval(xt, self.s_tilde, self.c_tilde)
        return np.tensordot(self.nodal, values, axes=1)

    def gradient(self, xt) -> np.ndarray:
        """Gradients with respect to x~, shape (4, ..., 2)."""
        _, grads = span_eval(xt, self.s_tilde, self.c_tilde)
        return np.tensordot(self.nodal, grads, axes=1)


def nodal_basis(s_tilde, c_tilde: float = 0.0) -> NonparametricElement:
    s = np.array(s_tilde, dtype=float)
    det = unisolvency_det(s, c_tilde)
    if abs(det) < UNISOLVENCY_TOL:
        raise NotUnisolvent(
            f"midpoint DOFs are not unisolvent for s~={s.tolist()}, "
            f"c~={c_tilde} (det = {det:.3e})",
            s_tilde=s, c_tilde=c_tilde, det=det)
    nodal = np.linalg.inv(dof_matrix(s, c_tilde))
    nodal.flags.writeable = False
    s.flags.writeable = False
    return NonparametricElement(
        s_tilde=s, c_tilde=float(c_tilde), r2=r2_tilde(s), nodal=nodal)


def circle_center_check(s_tilde):
    """
    Least-squares circle through the eta~ point pairs of the four edges.

    Each pair gives (c - a).(c - b) = r^2, which is linear in
    (c1, c2, r^2 - |c|^2) since a + b = 2 m^_j.

    :return: (center, radius)
    :raises Degenerate: when S(K^) is not convex
    """
    margin = convexity_margin(s_tilde)
    if margin <= 0.0:
        raise Degenerate(
            f"intermediate cell is not convex (margin {margin:.3e})",
            s_tilde=s_tilde)
    gauss = edge_gauss_set(s_tilde)
    a, b = gauss.eta[0::2], gauss.eta[1::2]
    lhs = np.column_stack([-2.0 * gauss.m, -np.ones(4)])
    rhs = -np.einsum('ij,ij->i', a, b)
    sol = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    center = sol[:2]
    return center, float(np.sqrt(sol[2] + center @ center))
