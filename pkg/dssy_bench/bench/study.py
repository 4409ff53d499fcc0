import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

import numpy as np

from dssy_bench.services import SolverService, load_settings

from .norms import error_norms, pressure_error
from .problems import exact_problem

log = logging.getLogger(__name__)

DEFAULT_LEVELS = (4, 8, 16, 32, 64, 128)


@dataclass(frozen=True)
class StudyConfig:
    problem: str = 'poisson'
    mesh: str = 'theta'
    element: str = 'np'
    levels: Sequence[int] = DEFAULT_LEVELS
    theta: float = 0.7
    alpha: float = 0.25
    seed: int = 1
    c_tilde: Optional[float] = None
    variant_l: int = 1
    mu: float = 1.0
    lam: float = 1.0
    quad: Optional[int] = None
    tol: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceRow:
    """One level of a convergence table; ratios are None on the first row."""
    h: float
    dof: int
    err_l2: float
    ratio_l2: Optional[float]
    err_h1: float
    ratio_h1: Optional[float]
    err_p: Optional[float] = None
    ratio_p: Optional[float] = None


def rate(err_coarse, err_fine, h_coarse, h_fine) -> Optional[float]:
    """Observed order between two levels, log2(e(2h)/e(h)) for halved h."""
    if err_coarse is None or err_fine is None:
        return None
    if err_coarse <= 0 or err_fine <= 0:
        return None
    return math.log(err_coarse / err_fine) / math.log(h_coarse / h_fine)


def least_squares_slope(hs, errors) -> float:
    """Slope of log(error) against log(h)."""
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


def with_ratios(rows: List[ConvergenceRow]) -> List[ConvergenceRow]:
    out = []
    for k, row in enumerate(rows):
        if k == 0:
            out.append(row)
            continue
        prev = rows[k - 1]
        out.append(replace(
            row,
            ratio_l2=rate(prev.err_l2, row.err_l2, prev.h, row.h),
            ratio_h1=rate(prev.err_h1, row.err_h1, prev.h, row.h),
            ratio_p=rate(prev.err_p, row.err_p, prev.h, row.h)))
    return out


def convergence_study(config: StudyConfig,
                      service: Optional[SolverService] = None
                      ) -> List[ConvergenceRow]:
    """
    Solve the manufactured problem on each level (n cells per side,
    h = 1/n) and tabulate the errors with their observed orders.
    """
    service = service or SolverService(load_settings())
    problem = exact_problem(config.problem, config.mu, config.lam)
    params = service.element_params(
        c_tilde=config.c_tilde, variant_l=config.variant_l, quad=config.quad,
        mu=config.mu, lam=config.lam)

    rows = []
    for n in config.levels:
        mesh = service.build_mesh(config.mesh, n, config.theta, config.alpha,
                                  config.seed)
        solution = service.solve(mesh, config.element, config.problem,
                                 params, forcing=problem.f, tol=config.tol)
        err_l2, err_h1 = error_norms(solution.u_h, problem,
                                     service.error_quad)
        err_p = None
        if solution.pressure is not None:
            err_p = pressure_error(mesh, solution.pressure, problem,
                                   service.error_quad)
        rows.append(ConvergenceRow(h=1.0 / n, dof=solution.dofs,
                                   err_l2=err_l2, ratio_l2=None,
                                   err_h1=err_h1, ratio_h1=None, err_p=err_p))
        log.info("%s %s/%s h=1/%d dof=%d l2=%.4e h1=%.4e%s",
                 config.problem, config.mesh, config.element, n,
                 solution.dofs, err_l2, err_h1,
                 '' if err_p is None else f" p={err_p:.4e}")
    return with_ratios(rows)
