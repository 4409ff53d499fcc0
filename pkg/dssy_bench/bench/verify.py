"""
Property checks over the reference elements, the assembly and the
manufactured problems, runnable as one suite from the command line.
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from dssy_bench.assembly import assemble, interpolate_midpoints
from dssy_bench.geometry import convexity_margin
from dssy_bench.linsolve import solve_spd
from dssy_bench.mesh import random_mesh, theta_mesh
from dssy_bench.refelem import (
    circle_center_check,
    dof_matrix,
    mean_value_residual,
    mu_tilde,
    nodal_basis,
    psi_hat,
    unisolvency_det,
)

from .problems import ProblemSpec, exact_problem

log = logging.getLogger(__name__)

FD_STEP = 1e-5
FD_POINTS = 100
C_TILDE_RANGE = 2.0
MIN_MARGIN = 0.05


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tol: float
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tol)


def sample_cells(rng, count: int):
    """(s~, c~) pairs of strictly convex intermediate cells."""
    out = []
    while len(out) < count:
        s = rng.uniform(-0.5, 0.5, size=2)
        if convexity_margin(s) > MIN_MARGIN:
            out.append((s, rng.uniform(-C_TILDE_RANGE, C_TILDE_RANGE)))
    return out


def fd_gradient(func: Callable, x, step: float = FD_STEP) -> np.ndarray:
    """Central differences, derivative direction appended as last axis."""
    x = np.asarray(x, dtype=float)
    columns = []
    for d in range(2):
        e = np.zeros(2)
        e[d] = step
        plus = np.asarray(func(x + e), dtype=float)
        minus = np.asarray(func(x - e), dtype=float)
        columns.append((plus - minus) / (2 * step))
    return np.stack(columns, axis=-1)


def _relative(diff, reference) -> float:
    return float(np.abs(diff).max() / max(np.abs(reference).max(), 1.0))


def forcing_residual(problem: ProblemSpec, points,
                     step: float = FD_STEP) -> float:
    """
    Relative mismatch between the stored forcing and the operator applied
    to the stored solution by central differences: first the gradient
    against u, then f against differences of the stored gradient.
    """
    grad_u = problem.grad_u(points)
    worst = _relative(fd_gradient(problem.u, points, step) - grad_u, grad_u)

    hess = fd_gradient(problem.grad_u, points, step)
    f = problem.f(points)
    if problem.kind == 'poisson':
        f_fd = -(hess[:, 0, 0] + hess[:, 1, 1])
    else:
        laplace = hess[:, :, 0, 0] + hess[:, :, 1, 1]
        if problem.kind == 'stokes':
            f_fd = -laplace + fd_gradient(problem.p, points, step)
        else:
            grad_div = hess[:, 0, 0, :] + hess[:, 1, 1, :]
            f_fd = (-(problem.lam + problem.mu) * grad_div
                    - problem.mu * laplace)
    return max(worst, _relative(f_fd - f, f))


def check_mean_value(rng, samples: int) -> float:
    return max(float(np.abs(mean_value_residual(s, c)).max())
               for s, c in sample_cells(rng, samples))


def check_unisolvency(rng, samples: int) -> float:
    worst = 0.0
    for s, c in sample_cells(rng, samples):
        closed = unisolvency_det(s, c)
        numeric = np.linalg.det(dof_matrix(s, c))
        worst = max(worst, abs(numeric - closed) / abs(closed))
    return worst


def check_square_reduction(rng, samples: int) -> float:
    points = rng.uniform(-1, 1, size=(samples, 2))
    return float(np.abs(mu_tilde(points, (0.0, 0.0), 0.0)
                        - psi_hat(points, 1)).max())


def check_circle(rng, samples: int) -> float:
    worst = 0.0
    for s, _ in sample_cells(rng, samples):
        center, radius = circle_center_check(s)
        expected = np.array([-0.4 * s[1], -0.4 * s[0]])
        worst = max(worst, float(np.abs(center - expected).max()),
                    abs(radius ** 2 - nodal_basis(s).r2))
    return worst


def _linear(x):
    return 3 * x[..., 0] - 2 * x[..., 1] + 1


def check_patch_test(rng, samples: int) -> float:
    seed = int(rng.integers(0, 2 ** 31))
    meshes = [theta_mesh(4, 0.0), theta_mesh(4, 0.7),
              random_mesh(4, 0.25, seed)]
    worst = 0.0
    for mesh in meshes:
        for kind in ('np', 'p'):
            system, dofmap = assemble(mesh, kind, 'poisson',
                                      boundary_values=_linear)
            x = solve_spd(system.matrix, system.rhs)
            expected = interpolate_midpoints(mesh, dofmap, _linear)
            worst = max(worst, float(
                np.abs(x - expected[:dofmap.n_edge_dofs]).max()))
    return worst


def check_forcing(rng, samples: int) -> float:
    points = rng.uniform(0.05, 0.95, size=(FD_POINTS, 2))
    problems = [exact_problem('poisson'), exact_problem('stokes'),
                exact_problem('elasticity', 1.0, 1.0),
                exact_problem('elasticity', 1.0, 1e5)]
    return max(forcing_residual(problem, points) for problem in problems)


CHECKS = [
    ('mean_value', check_mean_value, 1e-12),
    ('unisolvency_determinant', check_unisolvency, 1e-12),
    ('square_reduction', check_square_reduction, 1e-14),
    ('circle_center', check_circle, 1e-12),
    ('patch_test', check_patch_test, 1e-10),
    ('forcing_consistency', check_forcing, 1e-5),
]


def run_property_suite(samples: int = 1000, seed: int = 20240611,
                       names: Optional[Sequence[str]] = None
                       ) -> List[CheckResult]:
    """Run the named checks (all by default), each with its own generator."""
    results = []
    for name, check, tol in CHECKS:
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng(seed)
        started = time.perf_counter()
        worst = check(rng, samples)
        result = CheckResult(name=name, worst=worst, tol=tol,
                             elapsed=time.perf_counter() - started)
        log.debug("check %s: worst=%.3e tol=%.0e (%.2fs)",
                  name, worst, tol, result.elapsed)
        results.append(result)
    return results
