import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, TextIO

from dssy_bench.bench import (
    TIMING_WRITERS,
    WRITERS,
    ConvergenceRow,
    StudyConfig,
    TimingConfig,
    convergence_study,
    error_norms,
    exact_problem,
    pressure_error,
    run_property_suite,
    timing_ratio,
)
from dssy_bench.errors import OutputError
from dssy_bench.repositories import MeshRepository
from dssy_bench.schemas import (
    MeshArgsSchema,
    SolveArgsSchema,
    StudyArgsSchema,
    TimingArgsSchema,
    VerifyArgsSchema,
)
from dssy_bench.services import SolverService

from .decorators import validate_schema


def _written(n_rows: int, out: Optional[str]) -> Optional[str]:
    """Status line, or None when the table itself went to stdout."""
    return f"wrote {n_rows} rows to {out}" if out else None


class BenchHandler:
    """
    One method per ``dssy-bench`` sub-command. Each returns a payload with
    ``error`` and ``message``; tables go to ``--out`` or to ``stdout``.
    """

    def __init__(self, service: SolverService, settings: dict,
                 stdout: Optional[TextIO] = None):
        self.service = service
        self.settings = settings
        self.stdout = stdout or sys.stdout
        self.mesh_repository = MeshRepository()

    @contextmanager
    def _output(self, out: Optional[str]):
        if not out:
            yield self.stdout
            return
        try:
            stream = Path(out).open('w', encoding='utf-8')
        except OSError as e:
            raise OutputError(f"cannot write {out}: {e.strerror}")
        with stream:
            yield stream

    def _mesh(self, payload):
        if payload.get('mesh_file'):
            return self.mesh_repository.load(payload['mesh_file'])
        return self.service.build_mesh(
            payload['mesh'], payload['n'], payload['theta'],
            payload['alpha'], payload['seed'])

    @validate_schema(MeshArgsSchema)
    def mesh_handler(self, request) -> dict:
        payload = request.validated
        mesh = self._mesh(payload)
        if payload['out']:
            path = self.mesh_repository.save(mesh, payload['out'])
            message = f"wrote {mesh.n_cells} cells to {path}"
        else:
            self.mesh_repository.dump(mesh, self.stdout)
            message = None
        return {
            "error": False,
            "message": message,
            "n_cells": mesh.n_cells,
            "n_edges": mesh.n_edges,
        }

    @validate_schema(SolveArgsSchema)
    def solve_handler(self, request) -> dict:
        payload = request.validated
        problem = exact_problem(payload['problem'], payload['mu'],
                                payload['lam'])
        mesh = self._mesh(payload)
        params = self.service.element_params(
            c_tilde=payload['ctilde'], variant_l=payload['l'],
            quad=payload['quad'], mu=payload['mu'], lam=payload['lam'])

        solution = self.service.solve(mesh, payload['element'],
                                      payload['problem'], params,
                                      forcing=problem.f, tol=payload['tol'])
        err_l2, err_h1 = error_norms(solution.u_h, problem,
                                     self.service.error_quad)
        err_p = None
        if solution.pressure is not None:
            err_p = pressure_error(mesh, solution.pressure, problem,
                                   self.service.error_quad)

        lines = [f"dofs={solution.dofs}",
                 f"err_l2={err_l2:.4e}", f"err_h1={err_h1:.4e}"]
        if err_p is not None:
            lines.append(f"err_p={err_p:.4e}")
        if payload['out']:
            h = mesh.h if payload['mesh_file'] else 1.0 / payload['n']
            row = ConvergenceRow(h=h, dof=solution.dofs,
                                 err_l2=err_l2, ratio_l2=None, err_h1=err_h1,
                                 ratio_h1=None, err_p=err_p)
            with self._output(payload['out']) as stream:
                WRITERS[payload['format']]([row], stream)
        return {
            "error": False,
            "message": '\n'.join(lines),
            "dofs": solution.dofs,
            "err_l2": err_l2,
            "err_h1": err_h1,
            "err_p": err_p,
            "timings": solution.timings,
        }

    @validate_schema(StudyArgsSchema)
    def study_handler(self, request) -> dict:
        payload = request.validated
        config = StudyConfig(
            problem=payload['problem'], mesh=payload['mesh'],
            element=payload['element'], levels=tuple(payload['levels']),
            theta=payload['theta'], alpha=payload['alpha'],
            seed=payload['seed'], c_tilde=payload['ctilde'],
            variant_l=payload['l'], mu=payload['mu'], lam=payload['lam'],
            quad=payload['quad'], tol=payload['tol'])
        rows = convergence_study(config, self.service)
        with self._output(payload['out']) as stream:
            WRITERS[payload['format']](rows, stream)
        return {
            "error": False,
            "message": _written(len(rows), payload['out']),
            "rows": rows,
        }

    @validate_schema(TimingArgsSchema)
    def timing_handler(self, request) -> dict:
        payload = request.validated
        config = TimingConfig(
            mesh=payload['mesh'], levels=tuple(payload['levels']),
            theta=payload['theta'], alpha=payload['alpha'],
            seed=payload['seed'], c_tilde=payload['ctilde'],
            repeats=payload['repeats'])
        rows = timing_ratio(config, self.service)
        with self._output(payload['out']) as stream:
            TIMING_WRITERS[payload['format']](rows, stream)
        return {
            "error": False,
            "message": _written(len(rows), payload['out']),
            "rows": rows,
        }

    @validate_schema(VerifyArgsSchema)
    def verify_handler(self, request) -> dict:
        payload = request.validated
        samples = payload['samples'] or self.settings['verify_samples']
        results = run_property_suite(samples=samples, seed=payload['seed'])
        lines = [
            f"{'ok  ' if result.passed else 'FAIL'} {result.name}: "
            f"worst={result.worst:.3e} tol={result.tol:.0e}"
            for result in results
        ]
        failed = [result.name for result in results if not result.passed]
        if failed:
            lines.append(f"{len(failed)} of {len(results)} checks failed")
        return {
            "error": bool(failed),
            "message": '\n'.join(lines),
            "results": results,
        }
