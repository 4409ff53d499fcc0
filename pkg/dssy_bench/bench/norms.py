import numpy as np

from dssy_bench.assembly import DiscreteField
from dssy_bench.geometry import decompose, forward_map, jacobian
from dssy_bench.mesh import Mesh
from dssy_bench.quadrature import tensor_rule

from .problems import ProblemSpec

ERROR_QUAD = 6


def error_norms(u_h: DiscreteField, problem: ProblemSpec,
                npts: int = ERROR_QUAD):
    """
    L2 norm and broken H1 seminorm of u - u_h, summed cell by cell with a
    tensor Gauss rule pulled through each bilinear map.

    :return: (l2, h1_broken)
    """
    rule = tensor_rule(npts)
    ncomp = u_h.n_components
    l2 = h1 = 0.0
    for c in range(u_h.mesh.n_cells):
        values, grads, points, weights = u_h.evaluate_on_cell(
            c, rule.points, rule.weights)
        u = np.asarray(problem.u(points), dtype=float).reshape(-1, ncomp)
        grad_u = np.asarray(problem.grad_u(points), dtype=float)
        grad_u = grad_u.reshape(-1, ncomp, 2)
        l2 += weights @ ((u - values) ** 2).sum(axis=1)
        h1 += weights @ ((grad_u - grads) ** 2).sum(axis=(1, 2))
    return float(np.sqrt(l2)), float(np.sqrt(h1))


def pressure_error(mesh: Mesh, p_h, problem: ProblemSpec,
                   npts: int = ERROR_QUAD) -> float:
    """L2 error of a cellwise constant pressure."""
    rule = tensor_rule(npts)
    p_h = np.asarray(p_h, dtype=float)
    total = 0.0
    for c in range(mesh.n_cells):
        dec = decompose(mesh.quadrilateral(c))
        points = forward_map(dec, rule.points)
        weights = rule.weights * np.abs(np.linalg.det(jacobian(dec, rule.points)))
        total += weights @ (problem.p(points) - p_h[c]) ** 2
    return float(np.sqrt(total))
