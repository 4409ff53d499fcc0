import logging
import statistics
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

from dssy_bench.errors import BadParam
from dssy_bench.services import SolverService, load_settings

from .problems import exact_problem

log = logging.getLogger(__name__)

MIN_REPEATS = 3


@dataclass(frozen=True)
class TimingConfig:
    mesh: str = 'theta'
    levels: Sequence[int] = (32, 64, 128, 256)
    theta: float = 0.7
    alpha: float = 0.25
    seed: int = 1
    c_tilde: Optional[float] = None
    repeats: Optional[int] = None
    numerator: str = 'np'
    denominator: str = 'p'


@dataclass(frozen=True)
class TimingRow:
    h: float
    t_numerator: float
    t_denominator: float

    @property
    def ratio(self) -> float:
        return self.t_numerator / self.t_denominator


def median_time(run, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        run()
        samples.append(time.perf_counter() - started)
    return statistics.median(samples)


def timing_ratio(config: TimingConfig,
                 service: Optional[SolverService] = None
                 ) -> List[TimingRow]:
    """
    Wall-clock time of a Poisson solve with one element over another, per
    level. Mesh generation stays outside the timed region; local bases,
    assembly, condensation and the linear solve are inside.
    """
    service = service or SolverService(load_settings())
    repeats = config.repeats or service.timing_repeats
    if repeats < MIN_REPEATS:
        raise BadParam(f"timing needs at least {MIN_REPEATS} repeats, "
                       f"got {repeats}")
    problem = exact_problem('poisson')
    params = service.element_params(c_tilde=config.c_tilde)

    rows = []
    for n in config.levels:
        mesh = service.build_mesh(config.mesh, n, config.theta, config.alpha,
                                  config.seed)
        times = [
            median_time(lambda kind=kind: service.solve(
                mesh, kind, 'poisson', params, forcing=problem.f), repeats)
            for kind in (config.numerator, config.denominator)
        ]
        row = TimingRow(h=1.0 / n, t_numerator=times[0],
                        t_denominator=times[1])
        log.info("timing %s h=1/%d: t(%s)=%.3fs t(%s)=%.3fs ratio=%.4f",
                 config.mesh, n, config.numerator, times[0],
                 config.denominator, times[1], row.ratio)
        rows.append(row)
    return rows
