import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from dssy_bench.errors import BadParam, NoConvergence

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CgResult:
    x: np.ndarray
    iterations: int
    residual: float


def default_maxit(n: int) -> int:
    return max(5000, 10 * n)


def pcg(A, f, tol: float = DEFAULT_TOL, maxit: Optional[int] = None,
        precond: Optional[np.ndarray] = None, x0=None) -> CgResult:
    """
    Preconditioned conjugate gradients for symmetric positive definite A.

    ``A`` is anything supporting ``A @ x``; ``precond`` holds the entries of
    a diagonal preconditioner (defaults to 1/diag(A)). Stops when the
    recursively updated residual satisfies ||r|| <= tol ||f||.

    :raises NoConvergence: after ``maxit`` iterations, carrying the iterate
        with the smallest residual
    """
    if not tol > 0:
        raise BadParam(f"tol must be positive, got {tol!r}")
    f = np.asarray(f, dtype=float)
    n = len(f)
    maxit = default_maxit(n) if not maxit else maxit
    if precond is None:
        precond = 1.0 / A.diagonal()

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    norm_f = np.linalg.norm(f)
    if norm_f == 0.0:
        return CgResult(x=np.zeros(n), iterations=0, residual=0.0)

    r = f - A @ x if x0 is not None else f.copy()
    z = precond * r
    p = z.copy()
    rz = r @ z
    res = np.linalg.norm(r) / norm_f
    best_x, best_res = x.copy(), res

    for iteration in range(1, maxit + 1):
        if res <= tol:
            log.debug("pcg converged: n=%d its=%d res=%.3e",
                      n, iteration - 1, res)
            return CgResult(x=x, iterations=iteration - 1, residual=res)

        q = A @ p
        alpha = rz / (p @ q)
        x += alpha * p
        r -= alpha * q

        res = np.linalg.norm(r) / norm_f
        if res < best_res:
            best_x, best_res = x.copy(), res

        z = precond * r
        rz_old, rz = rz, r @ z
        p = z + (rz / rz_old) * p

    if res <= tol:
        return CgResult(x=x, iterations=maxit, residual=res)
    raise NoConvergence(
        f"pcg did not reach tol={tol:.1e} in {maxit} iterations "
        f"(relative residual {best_res:.3e})",
        x=best_x, residual=best_res, iterations=maxit)


def solve_spd(A, f, tol: float = DEFAULT_TOL,
              maxit: Optional[int] = None) -> np.ndarray:
    """Jacobi-preconditioned CG; returns x with ||f - A x|| <= tol ||f||."""
    return pcg(A, f, tol=tol, maxit=maxit).x
