import logging
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator

from .cg import DEFAULT_TOL, pcg, solve_spd

log = logging.getLogger(__name__)

DEFAULT_SADDLE_TOL = 1e-10


def zero_mean(p, areas) -> np.ndarray:
    """Shift p so that sum_q p_q |K_q| vanishes."""
    p = np.asarray(p, dtype=float)
    return p - (areas @ p) / areas.sum()


def solve_saddle(A, B, f, g=None, tol: float = DEFAULT_SADDLE_TOL,
                 areas: Optional[np.ndarray] = None,
                 inner_tol: float = DEFAULT_TOL,
                 maxit: Optional[int] = None):
    """
    Solve [[A, B^T], [B, 0]] (u, p) = (f, g) for SPD A and a B whose kernel
    of B^T is the constants.

    Runs preconditioned CG on the pressure Schur complement B A^-1 B^T with
    inner Jacobi-CG solves and the inverse cell areas as preconditioner.
    The constant pressure mode is projected out; the returned pressure has
    zero area-weighted mean.

    :return: (u, p)
    """
    n_p = B.shape[0]
    areas = np.ones(n_p) if areas is None else np.asarray(areas, dtype=float)
    g = np.zeros(n_p) if g is None else np.asarray(g, dtype=float)
    f = np.asarray(f, dtype=float)
    counter = {'inner': 0}

    def inverse_A(rhs):
        counter['inner'] += 1
        return solve_spd(A, rhs, tol=inner_tol, maxit=maxit)

    def schur(q):
        return B @ inverse_A(B.T @ q)

    S = LinearOperator((n_p, n_p), matvec=schur, dtype=float)
    rhs = B @ inverse_A(f) - g
    rhs -= rhs.mean()

    result = pcg(S, rhs, tol=tol, maxit=maxit, precond=1.0 / areas)
    p = zero_mean(result.x, areas)
    u = inverse_A(f - B.T @ p)
    log.debug("saddle solve: %d outer iterations, %d inner solves, res=%.3e",
              result.iterations, counter['inner'], result.residual)
    return u, p
