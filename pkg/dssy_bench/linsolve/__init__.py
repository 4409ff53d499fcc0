from .cg import CgResult, default_maxit, pcg, solve_spd
from .saddle import solve_saddle, zero_mean
