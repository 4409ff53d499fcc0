import numpy as np

from dssy_bench.errors import SingularInterior

from .local import LocalMatrices, Recovery

SINGULAR_INTERIOR_TOL = 1e-14


def static_condense(loc: LocalMatrices) -> LocalMatrices:
    """
    Eliminate the interior (cell) DOFs by a local Schur complement.

    Matrices without interior DOFs are returned unchanged.
    """
    if not loc.interior:
        return loc

    interior = np.array(loc.interior)
    exterior = np.setdiff1d(np.arange(loc.size), interior)
    K_cc = loc.K[np.ix_(interior, interior)]
    K_ce = loc.K[np.ix_(interior, exterior)]
    K_ec = loc.K[np.ix_(exterior, interior)]
    F_c = loc.F[interior]

    scale = np.trace(loc.K)
    if np.min(np.abs(np.diag(K_cc))) < SINGULAR_INTERIOR_TOL * scale:
        raise SingularInterior(
            f"interior block {np.diag(K_cc)} is singular (trace {scale:.3e})")

    solve = np.linalg.solve(K_cc, np.column_stack([K_ce, F_c]))
    K = loc.K[np.ix_(exterior, exterior)] - K_ec @ solve[:, :-1]
    F = loc.F[exterior] - K_ec @ solve[:, -1]
    return LocalMatrices(
        K=K, F=F, area=loc.area, s_tilde=loc.s_tilde, det_A=loc.det_A,
        recovery=Recovery(interior=loc.interior, K_cc=K_cc, K_ce=K_ce,
                          F_c=F_c))


def recover_interior(recovery: Recovery, u_e) -> np.ndarray:
    return np.linalg.solve(
        recovery.K_cc, recovery.F_c - recovery.K_ce @ np.asarray(u_e))
