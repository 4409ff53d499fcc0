from .nonparametric import (
    EdgeGaussSet,
    NonparametricElement,
    circle_center_check,
    dof_matrix,
    edge_directions,
    edge_gauss_set,
    ell,
    mean_value_residual,
    mu_tilde,
    mu_tilde_grad,
    nodal_basis,
    q_tilde,
    r2_tilde,
    span_eval,
    unisolvency_det,
)
from .parametric import (
    ParametricElement,
    parametric_basis_eval,
    phi,
    psi_hat,
    psi_hat_factored,
    psi_hat_grad,
)
