from .problems import ProblemSpec, exact_problem
from .norms import ERROR_QUAD, error_norms, pressure_error
from .study import (
    ConvergenceRow,
    StudyConfig,
    convergence_study,
    least_squares_slope,
    rate,
    with_ratios,
)
from .timing import TimingConfig, TimingRow, median_time, timing_ratio
from .report import (
    TIMING_WRITERS,
    WRITERS,
    table_error,
    write_csv,
    write_markdown,
    write_timing_csv,
    write_timing_markdown,
)
from .verify import CheckResult, forcing_residual, run_property_suite
