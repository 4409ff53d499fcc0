from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial

from dssy_bench.errors import BadVariant
from dssy_bench.geometry import REFERENCE_MIDPOINTS
from dssy_bench.quadrature import tensor_rule

# phi_1(t) = t^2 - 5/3 t^4,  phi_2(t) = t^2 - 25/6 t^4 + 7/2 t^6
PHI = {
    1: Polynomial([0.0, 0.0, 1.0, 0.0, -5.0 / 3.0]),
    2: Polynomial([0.0, 0.0, 1.0, 0.0, -25.0 / 6.0, 0.0, 3.5]),
}
PHI_PRIME = {l: p.deriv() for l, p in PHI.items()}

# Cell moment DOF: integral of v * x1 * x2 over the reference square.
MOMENT_RULE_NPTS = 5


def _check_variant(l):
    if l not in PHI:
        raise BadVariant(f"DSSY variant must be 1 or 2, got {l!r}")


def phi(t, l: int = 1):
    _check_variant(l)
    return PHI[l](np.asarray(t, dtype=float))


def psi_hat(xhat, l: int = 1):
    """phi_l(x1) - phi_l(x2), the nonlinear DSSY shape function."""
    _check_variant(l)
    xhat = np.asarray(xhat, dtype=float)
    return PHI[l](xhat[..., 0]) - PHI[l](xhat[..., 1])


def psi_hat_factored(xhat):
    """The l = 1 function as two diagonals times a circle."""
    xhat = np.asarray(xhat, dtype=float)
    x1, x2 = xhat[..., 0], xhat[..., 1]
    return -5.0 / 3.0 * (x1 - x2) * (x1 + x2) * (x1 ** 2 + x2 ** 2 - 0.6)


def psi_hat_grad(xhat, l: int = 1):
    _check_variant(l)
    xhat = np.asarray(xhat, dtype=float)
    return np.stack(
        [PHI_PRIME[l](xhat[..., 0]), -PHI_PRIME[l](xhat[..., 1])], axis=-1)


@dataclass(frozen=True, eq=False)
class ParametricElement:
    """
    Reference DSSY space {1, x1, x2, [x1 x2,] psi_l}.

    The augmented space carries a fifth DOF, the moment against x1 x2.
    """
    variant_l: int = 1
    augmented: bool = False

    def __post_init__(self):
        _check_variant(self.variant_l)

    @property
    def dim(self) -> int:
        return 5 if self.augmented else 4

    @cached_property
    def nodal(self) -> np.ndarray:
        """Row i holds the coefficients of nodal function i."""
        values, _ = parametric_basis_eval(self, REFERENCE_MIDPOINTS)
        dofs = values
        if self.augmented:
            rule = tensor_rule(MOMENT_RULE_NPTS)
            at_rule, _ = parametric_basis_eval(self, rule.points)
            bubble = rule.points[:, 0] * rule.points[:, 1]
            moments = at_rule @ (rule.weights * bubble)
            dofs = np.column_stack([values, moments])
        nodal = np.linalg.inv(dofs)
        nodal.flags.writeable = False
        return nodal

    def evaluate(self, xhat):
        """Values (k, ...) and reference gradients (k, ..., 2) of the nodal basis."""
        values, grads = parametric_basis_eval(self, xhat)
        return (np.tensordot(self.nodal, values, axes=1),
                np.tensordot(self.nodal, grads, axes=1))


def parametric_basis_eval(el: ParametricElement, xhat):
    """
    Values and reference gradients of 1, x1, x2, [x1 x2,] psi_l.

    :return: (values of shape (k, ...), gradients of shape (k, ..., 2))
    """
    xhat = np.asarray(xhat, dtype=float)
    x1, x2 = xhat[..., 0], xhat[..., 1]
    one, zero = np.ones_like(x1), np.zeros_like(x1)

    values = [one, x1, x2]
    grads = [np.stack([zero, zero], axis=-1),
             np.stack([one, zero], axis=-1),
             np.stack([zero, one], axis=-1)]
    if el.augmented:
        values.append(x1 * x2)
        grads.append(np.stack([x2, x1], axis=-1))
    values.append(psi_hat(xhat, el.variant_l))
    grads.append(psi_hat_grad(xhat, el.variant_l))
    return np.stack(values), np.stack(grads)
