import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from dssy_bench.assembly import (
    DiscreteField,
    DofMap,
    ElementParams,
    SparseSystem,
    assemble,
    reported_dofs,
)
from dssy_bench.linsolve import pcg, solve_saddle
from dssy_bench.mesh import Mesh, random_mesh, theta_mesh

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Solution:
    mesh: Mesh
    dofmap: DofMap
    system: SparseSystem
    u_h: DiscreteField
    dofs: int
    pressure: Optional[np.ndarray] = None
    iterations: int = 0
    timings: Dict[str, float] = field(default_factory=dict)


class SolverService:
    """
    Discretise, assemble and solve one problem on one mesh, with solver and
    quadrature defaults taken from the settings.
    """

    def __init__(self, settings: dict):
        self.quad = settings['quad']
        self.error_quad = settings['error_quad']
        self.tol = settings['tol']
        self.saddle_tol = settings['saddle_tol']
        self.maxit = settings['maxit'] or None
        self.ctilde = settings['ctilde']
        self.timing_repeats = settings['timing_repeats']

    def build_mesh(self, mesh: str, n: int, theta: float = 0.7,
                   alpha: float = 0.25, seed: int = 1) -> Mesh:
        if mesh == 'random':
            return random_mesh(n, alpha, seed)
        return theta_mesh(n, theta)

    def element_params(self, c_tilde: Optional[float] = None,
                       variant_l: int = 1, quad: Optional[int] = None,
                       mu: float = 1.0, lam: float = 1.0) -> ElementParams:
        return ElementParams(
            c_tilde=self.ctilde if c_tilde is None else c_tilde,
            variant_l=variant_l,
            quad_npts=self.quad if quad is None else quad,
            mu=mu, lam=lam)

    def solve(self, mesh: Mesh, element_kind: str, problem_kind: str,
              params: ElementParams, forcing: Optional[Callable] = None,
              boundary_values=None, tol: Optional[float] = None) -> Solution:
        """
        Assemble (with static condensation of cell DOFs) and solve.

        :raises NoConvergence: when an iterative solve stalls
        """
        tol = self.tol if tol is None else tol
        started = time.perf_counter()
        system, dofmap = assemble(mesh, element_kind, problem_kind, params,
                                  forcing=forcing,
                                  boundary_values=boundary_values)
        assembled = time.perf_counter()

        pressure = None
        iterations = 0
        if problem_kind == 'stokes':
            x, pressure = solve_saddle(
                system.matrix, system.B, system.rhs, system.rhs_p,
                tol=self.saddle_tol, areas=system.areas, inner_tol=tol,
                maxit=self.maxit)
        else:
            result = pcg(system.matrix, system.rhs, tol=tol, maxit=self.maxit)
            x, iterations = result.x, result.iterations
        u_h = DiscreteField.from_solution(mesh, dofmap, system, x, params)
        solved = time.perf_counter()

        timings = {
            'assembly': assembled - started,
            'solve': solved - assembled,
            'total': solved - started,
        }
        log.debug("%s/%s on %d cells: assembly %.3fs, solve %.3fs",
                  problem_kind, element_kind, mesh.n_cells,
                  timings['assembly'], timings['solve'])
        return Solution(mesh=mesh, dofmap=dofmap, system=system, u_h=u_h,
                        dofs=reported_dofs(system, dofmap), pressure=pressure,
                        iterations=iterations, timings=timings)
