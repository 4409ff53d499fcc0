from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dssy_bench.errors import BadParam, SingularMap

# Vertex j of a cell is the image of reference vertex j.
REFERENCE_VERTICES = np.array([
    [1.0, 1.0],
    [-1.0, 1.0],
    [-1.0, -1.0],
    [1.0, -1.0],
])

# Midpoint j lies on the edge joining vertices j-1 and j (v0 := v4).
REFERENCE_MIDPOINTS = np.array([
    [1.0, 0.0],
    [0.0, 1.0],
    [-1.0, 0.0],
    [0.0, -1.0],
])

SINGULAR_TOL = 1e-14
RECTANGLE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Quadrilateral:
    """
    A physical cell given by its four vertices, ordered like the
    reference vertices (1,1), (-1,1), (-1,-1), (1,-1).
    """
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        if v.shape != (4, 2):
            raise BadParam(f"a quadrilateral needs 4x2 vertices, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise BadParam("quadrilateral vertices must be finite")
        v.flags.writeable = False
        object.__setattr__(self, 'v', v)

    @cached_property
    def diameter(self) -> float:
        diff = self.v[:, None, :] - self.v[None, :, :]
        return float(np.sqrt((diff ** 2).sum(axis=-1)).max())

    @cached_property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (np.roll(self.v, 1, axis=0) + self.v)


@dataclass(frozen=True, eq=False)
class BilinearDecomposition:
    """F_K(x) = A x + x1 x2 d + b = A (x + x1 x2 s) + b."""
    A: np.ndarray
    b: np.ndarray
    d: np.ndarray
    s_tilde: np.ndarray

    @cached_property
    def det_A(self) -> float:
        return float(np.linalg.det(self.A))

    @cached_property
    def A_inv(self) -> np.ndarray:
        return np.linalg.inv(self.A)


@dataclass(frozen=True, eq=False)
class IntermediateQuad:
    vt: np.ndarray

    @cached_property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (np.roll(self.vt, 1, axis=0) + self.vt)


def _coefficients(v):
    """A, b, d from vertex arrays of shape (..., 4, 2)."""
    v1, v2, v3, v4 = v[..., 0, :], v[..., 1, :], v[..., 2, :], v[..., 3, :]
    A = 0.25 * np.stack([v1 - v2 - v3 + v4, v1 + v2 - v3 - v4], axis=-1)
    d = 0.25 * (v1 - v2 + v3 - v4)
    b = 0.25 * (v1 + v2 + v3 + v4)
    return A, b, d


def decompose(q: Quadrilateral) -> BilinearDecomposition:
    A, b, d = _coefficients(q.v)
    det = np.linalg.det(A)
    if abs(det) <= SINGULAR_TOL * q.diameter ** 2:
        raise SingularMap(
            f"bilinear map is singular (det A = {det:.3e})", det=det)
    s_tilde = np.linalg.solve(A, d)
    return BilinearDecomposition(A=A, b=b, d=d, s_tilde=s_tilde)


def decompose_many(vertices: np.ndarray):
    """
    Vectorised decomposition of a stack of cells.

    :param vertices: array of shape (C, 4, 2)
    :return: (A, b, d, s_tilde, det_A); s_tilde is nan where det A = 0
    """
    vertices = np.asarray(vertices, dtype=float)
    A, b, d = _coefficients(vertices)
    det = A[:, 0, 0] * A[:, 1, 1] - A[:, 0, 1] * A[:, 1, 0]
    with np.errstate(divide='ignore', invalid='ignore'):
        s1 = (A[:, 1, 1] * d[:, 0] - A[:, 0, 1] * d[:, 1]) / det
        s2 = (A[:, 0, 0] * d[:, 1] - A[:, 1, 0] * d[:, 0]) / det
    return A, b, d, np.stack([s1, s2], axis=-1), det


def forward_map(dec: BilinearDecomposition, xhat) -> np.ndarray:
    xhat = np.asarray(xhat, dtype=float)
    bilinear = (xhat[..., 0] * xhat[..., 1])[..., None]
    return xhat @ dec.A.T + bilinear * dec.d + dec.b


def jacobian(dec: BilinearDecomposition, xhat) -> np.ndarray:
    xhat = np.asarray(xhat, dtype=float)
    col1 = dec.A[:, 0] + xhat[..., 1, None] * dec.d
    col2 = dec.A[:, 1] + xhat[..., 0, None] * dec.d
    return np.stack([col1, col2], axis=-1)


def simple_map(s_tilde, xhat) -> np.ndarray:
    """S(x) = x + x1 x2 s; leaves the reference midpoints fixed."""
    xhat = np.asarray(xhat, dtype=float)
    return xhat + (xhat[..., 0] * xhat[..., 1])[..., None] * np.asarray(s_tilde)


def simple_map_det(s_tilde, xhat) -> np.ndarray:
    xhat = np.asarray(xhat, dtype=float)
    return 1.0 + s_tilde[0] * xhat[..., 1] + s_tilde[1] * xhat[..., 0]


def intermediate_quad(s_tilde) -> IntermediateQuad:
    s = np.asarray(s_tilde, dtype=float)
    signs = np.array([1.0, -1.0, 1.0, -1.0])[:, None]
    return IntermediateQuad(vt=REFERENCE_VERTICES + signs * s)


def convexity_margin(s_tilde) -> float:
    """Positive iff the intermediate quadrilateral is strictly convex."""
    return 1.0 - abs(s_tilde[0]) - abs(s_tilde[1])


def is_rectangle(dec: BilinearDecomposition, diameter: float) -> bool:
    return float(np.linalg.norm(dec.d)) <= RECTANGLE_TOL * diameter
