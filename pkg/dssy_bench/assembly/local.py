from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from dssy_bench.errors import BadParam
from dssy_bench.geometry import (
    Quadrilateral,
    decompose,
    forward_map,
    is_rectangle,
    jacobian,
    simple_map,
    simple_map_det,
)
from dssy_bench.quadrature import tensor_rule
from dssy_bench.refelem import ParametricElement, nodal_basis

ELEMENT_KINDS = ('np', 'p')
PROBLEM_KINDS = ('poisson', 'stokes', 'elasticity')


@dataclass(frozen=True)
class ElementParams:
    c_tilde: float = 0.0
    variant_l: int = 1
    quad_npts: int = 5
    mu: float = 1.0
    lam: float = 1.0


def n_components(problem_kind: str) -> int:
    return 1 if problem_kind == 'poisson' else 2


def check_kinds(element_kind: str, problem_kind: str) -> None:
    if element_kind not in ELEMENT_KINDS:
        raise BadParam(f"unknown element kind {element_kind!r}, "
                       f"expected one of {', '.join(ELEMENT_KINDS)}")
    if problem_kind not in PROBLEM_KINDS:
        raise BadParam(f"unknown problem {problem_kind!r}, "
                       f"expected one of {', '.join(PROBLEM_KINDS)}")
    if element_kind == 'p' and problem_kind != 'poisson':
        raise BadParam(
            f"the parametric element is only set up for poisson, "
            f"use --element np for {problem_kind}")


@dataclass(frozen=True, eq=False)
class CellBasis:
    """
    Basis functions of one cell sampled at reference points.

    values (k, m), physical gradients (k, m, 2), physical points (m, 2) and
    weights (m,) already scaled by |det DF|.
    """
    values: np.ndarray
    grads: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    s_tilde: np.ndarray
    det_A: float
    augmented: bool = False


def cell_basis(quad: Quadrilateral, element_kind: str, xhat, weights,
               params: ElementParams = ElementParams()) -> CellBasis:
    """
    Evaluate the local basis of ``quad`` at reference points ``xhat``.

    The nonparametric basis lives on the intermediate cell S(K^) and reaches
    K through the affine part A only, so gradients pick up A^-T. The
    parametric basis is pulled back through the full bilinear map.
    """
    dec = decompose(quad)
    xhat = np.asarray(xhat, dtype=float)
    weights = np.asarray(weights, dtype=float)
    points = forward_map(dec, xhat)

    if element_kind == 'np':
        el = nodal_basis(dec.s_tilde, params.c_tilde)
        xt = simple_map(dec.s_tilde, xhat)
        values = el.evaluate(xt)
        grads = el.gradient(xt) @ dec.A_inv
        det = dec.det_A * simple_map_det(dec.s_tilde, xhat)
        return CellBasis(values=values, grads=grads, points=points,
                         weights=weights * np.abs(det),
                         s_tilde=dec.s_tilde, det_A=dec.det_A)

    augmented = not is_rectangle(dec, quad.diameter)
    el = ParametricElement(variant_l=params.variant_l, augmented=augmented)
    values, ref_grads = el.evaluate(xhat)
    jac = jacobian(dec, xhat)
    grads = np.einsum('kmi,mij->kmj', ref_grads, np.linalg.inv(jac))
    det = np.linalg.det(jac)
    return CellBasis(values=values, grads=grads, points=points,
                     weights=weights * np.abs(det), s_tilde=dec.s_tilde,
                     det_A=dec.det_A, augmented=augmented)


@dataclass(frozen=True, eq=False)
class LocalMatrices:
    """
    Element matrices of one cell.

    Vector unknowns are component blocked: local index c * k + i is
    component c of basis function i. ``interior`` lists local indices of
    cell DOFs eliminated by static condensation.
    """
    K: np.ndarray
    F: np.ndarray
    B: Optional[np.ndarray] = None
    interior: Tuple[int, ...] = ()
    area: float = 0.0
    s_tilde: np.ndarray = field(default_factory=lambda: np.zeros(2))
    det_A: float = 0.0
    recovery: Optional['Recovery'] = None

    @property
    def size(self) -> int:
        return len(self.F)


@dataclass(frozen=True, eq=False)
class Recovery:
    """Data restoring condensed cell DOFs: u_c = K_cc^-1 (F_c - K_ce u_e)."""
    interior: Tuple[int, ...]
    K_cc: np.ndarray
    K_ce: np.ndarray
    F_c: np.ndarray


def _laplace(basis: CellBasis) -> np.ndarray:
    return np.einsum('imd,jmd,m->ij', basis.grads, basis.grads, basis.weights)


def _load(basis: CellBasis, forcing: Optional[Callable], ncomp: int):
    k = len(basis.values)
    if forcing is None:
        return np.zeros(ncomp * k)
    f = np.asarray(forcing(basis.points), dtype=float)
    f = f.reshape(len(basis.weights), ncomp)
    return (basis.values @ (basis.weights[:, None] * f)).T.reshape(-1)


def local_matrices(quad: Quadrilateral, element_kind: str, problem_kind: str,
                   params: ElementParams = ElementParams(),
                   forcing: Optional[Callable] = None) -> LocalMatrices:
    check_kinds(element_kind, problem_kind)
    rule = tensor_rule(params.quad_npts)
    basis = cell_basis(quad, element_kind, rule.points, rule.weights, params)
    k = len(basis.values)
    ncomp = n_components(problem_kind)
    laplace = _laplace(basis)
    meta = dict(area=float(basis.weights.sum()), s_tilde=basis.s_tilde,
                det_A=basis.det_A)

    if problem_kind == 'poisson':
        interior = (k - 1,) if basis.augmented else ()
        return LocalMatrices(K=laplace, F=_load(basis, forcing, 1),
                             interior=interior, **meta)

    blocked = np.kron(np.eye(2), laplace)
    F = _load(basis, forcing, ncomp)
    # integrals of the partial derivatives d_c b_i, shape (2, k)
    div_moments = np.einsum('imc,m->ci', basis.grads, basis.weights)

    if problem_kind == 'stokes':
        return LocalMatrices(K=blocked, F=F, B=-div_moments.reshape(1, -1),
                             **meta)

    # D[(c, i), (d, j)] = int d_c b_i d_d b_j
    D = np.einsum('imc,jmd,m->cidj', basis.grads, basis.grads, basis.weights)
    D = D.reshape(2 * k, 2 * k)
    K = params.mu * blocked + (params.lam + params.mu) * D
    return LocalMatrices(K=K, F=F, **meta)
