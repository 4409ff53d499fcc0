from .config import load_settings, read_settings, setup_logging
from .solver import Solution, SolverService
