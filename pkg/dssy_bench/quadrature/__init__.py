from .gauss import (
    Rule1D,
    Rule2D,
    edge_mean,
    gauss1d,
    tensor_rule,
)
