"""
Manufactured solutions on the unit square.

All fields take an (m, 2) array of points. Scalar fields return (m,),
vector fields (m, 2); gradients carry the derivative direction last, so
grad_u of a vector field has shape (m, 2, 2) with [.., c, d] = d u_c / d x_d.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial

from dssy_bench.assembly import PROBLEM_KINDS
from dssy_bench.errors import BadParam

PI = np.pi


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    u: Callable
    grad_u: Callable
    f: Callable
    p: Optional[Callable] = None
    grad_p: Optional[Callable] = None
    mu: float = 1.0
    lam: float = 1.0

    @property
    def n_components(self) -> int:
        return 1 if self.kind == 'poisson' else 2


def _xy(x):
    x = np.asarray(x, dtype=float)
    return x[..., 0], x[..., 1]


def poisson() -> ProblemSpec:
    def u(x):
        x1, x2 = _xy(x)
        return np.sin(PI * x1) * np.sin(PI * x2)

    def grad_u(x):
        x1, x2 = _xy(x)
        return PI * np.stack([np.cos(PI * x1) * np.sin(PI * x2),
                              np.sin(PI * x1) * np.cos(PI * x2)], axis=-1)

    def f(x):
        return 2 * PI ** 2 * u(x)

    return ProblemSpec(kind='poisson', u=u, grad_u=grad_u, f=f)


# Stokes velocity: the curl of e^(x+2y) x^2 (1-x)^2 y^2 (1-y)^2, written as
# u1 = E a(x) b(y), u2 = -E c(x) d(y) with E = e^(x+2y).
_A = Polynomial([0, 0, 1, -2, 1])
_B = Polynomial([0, 2, -4, 0, 2])
_C = Polynomial([0, 2, -5, 2, 1])
_D = Polynomial([0, 0, 1, -2, 1])


def _dx(poly):
    """(P + P') for derivatives of e^x P(x)."""
    return poly + poly.deriv()


def _dy(poly):
    """(2P + P') for derivatives of e^(2y) P(y)."""
    return 2 * poly + poly.deriv()


def stokes() -> ProblemSpec:
    def E(x1, x2):
        return np.exp(x1 + 2 * x2)

    def u(x):
        x1, x2 = _xy(x)
        e = E(x1, x2)
        return np.stack([e * _A(x1) * _B(x2), -e * _C(x1) * _D(x2)], axis=-1)

    def grad_u(x):
        x1, x2 = _xy(x)
        e = E(x1, x2)
        row1 = np.stack([_dx(_A)(x1) * _B(x2), _A(x1) * _dy(_B)(x2)], axis=-1)
        row2 = -np.stack([_dx(_C)(x1) * _D(x2), _C(x1) * _dy(_D)(x2)], axis=-1)
        return e[..., None, None] * np.stack([row1, row2], axis=-2)

    def laplace_u(x):
        x1, x2 = _xy(x)
        e = E(x1, x2)
        lap1 = _dx(_dx(_A))(x1) * _B(x2) + _A(x1) * _dy(_dy(_B))(x2)
        lap2 = _dx(_dx(_C))(x1) * _D(x2) + _C(x1) * _dy(_dy(_D))(x2)
        return np.stack([e * lap1, -e * lap2], axis=-1)

    def p(x):
        x1, x2 = _xy(x)
        return -np.sin(2 * PI * x1) * np.sin(2 * PI * x2)

    def grad_p(x):
        x1, x2 = _xy(x)
        return -2 * PI * np.stack(
            [np.cos(2 * PI * x1) * np.sin(2 * PI * x2),
             np.sin(2 * PI * x1) * np.cos(2 * PI * x2)], axis=-1)

    def f(x):
        return -laplace_u(x) + grad_p(x)

    return ProblemSpec(kind='stokes', u=u, grad_u=grad_u, f=f, p=p,
                       grad_p=grad_p)


def elasticity(mu: float = 1.0, lam: float = 1.0) -> ProblemSpec:
    """Clamped displacement whose divergence scales with 1/(1 + lam)."""
    kappa = 1.0 / (1.0 + lam)

    def u(x):
        x1, x2 = _xy(x)
        s = np.sin(PI * x1) * np.sin(PI * x2)
        return np.stack([
            np.sin(2 * PI * x2) * (np.cos(2 * PI * x1) - 1) + kappa * s,
            np.sin(2 * PI * x1) * (1 - np.cos(2 * PI * x2)) + kappa * s,
        ], axis=-1)

    def grad_u(x):
        x1, x2 = _xy(x)
        sx, cx = np.sin(PI * x1), np.cos(PI * x1)
        sy, cy = np.sin(PI * x2), np.cos(PI * x2)
        s2x, c2x = np.sin(2 * PI * x1), np.cos(2 * PI * x1)
        s2y, c2y = np.sin(2 * PI * x2), np.cos(2 * PI * x2)
        row1 = np.stack([-2 * PI * s2y * s2x + kappa * PI * cx * sy,
                         2 * PI * c2y * (c2x - 1) + kappa * PI * sx * cy],
                        axis=-1)
        row2 = np.stack([2 * PI * c2x * (1 - c2y) + kappa * PI * cx * sy,
                         2 * PI * s2x * s2y + kappa * PI * sx * cy], axis=-1)
        return np.stack([row1, row2], axis=-2)

    def f(x):
        x1, x2 = _xy(x)
        s = np.sin(PI * x1) * np.sin(PI * x2)
        grad_div = kappa * PI ** 2 * np.cos(PI * (x1 + x2))
        lap1 = (-4 * PI ** 2 * np.sin(2 * PI * x2) * (2 * np.cos(2 * PI * x1) - 1)
                - 2 * PI ** 2 * kappa * s)
        lap2 = (4 * PI ** 2 * np.sin(2 * PI * x1) * (2 * np.cos(2 * PI * x2) - 1)
                - 2 * PI ** 2 * kappa * s)
        return np.stack([-(lam + mu) * grad_div - mu * lap1,
                         -(lam + mu) * grad_div - mu * lap2], axis=-1)

    return ProblemSpec(kind='elasticity', u=u, grad_u=grad_u, f=f,
                       mu=mu, lam=lam)


def exact_problem(kind: str, mu: float = 1.0, lam: float = 1.0) -> ProblemSpec:
    if kind not in PROBLEM_KINDS:
        raise BadParam(f"unknown problem {kind!r}, "
                       f"expected one of {', '.join(PROBLEM_KINDS)}")
    if kind == 'poisson':
        return poisson()
    if kind == 'stokes':
        return stokes()
    if not mu > 0 or not lam >= 0:
        raise BadParam(f"elasticity needs mu > 0 and lambda >= 0, "
                       f"got mu={mu!r}, lambda={lam!r}")
    return elasticity(mu, lam)
