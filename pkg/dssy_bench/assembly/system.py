import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
import scipy.sparse as sp

from dssy_bench.geometry import decompose, forward_map
from dssy_bench.mesh import Mesh
from dssy_bench.quadrature import tensor_rule

from .condense import static_condense
from .dofmap import DofMap, build_dofmap
from .local import (
    ElementParams,
    Recovery,
    check_kinds,
    local_matrices,
    n_components,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SparseSystem:
    """
    Assembled linear system.

    ``matrix`` acts on the unknowns that are solved for: all DOFs, or edge
    DOFs only when cell DOFs were condensed (``recovery`` then maps cells
    to their local recovery data). Stokes systems carry the divergence
    block ``B`` (one row per cell), its right-hand side ``rhs_p`` and the
    cell areas used for the pressure mean.
    """
    matrix: sp.csr_matrix
    rhs: np.ndarray
    problem_kind: str
    B: Optional[sp.csr_matrix] = None
    rhs_p: Optional[np.ndarray] = None
    areas: Optional[np.ndarray] = None
    recovery: Dict[int, Recovery] = field(default_factory=dict)
    boundary_values: Optional[np.ndarray] = None

    @property
    def n_unknowns(self) -> int:
        return self.matrix.shape[0]


def reported_dofs(system: SparseSystem, dofmap: DofMap) -> int:
    """DOF count as tabulated: velocity plus zero-mean pressure for Stokes."""
    if system.problem_kind == 'stokes':
        return dofmap.n_dofs + system.B.shape[0] - 1
    return dofmap.n_dofs


def edge_boundary_values(mesh: Mesh, ncomp: int,
                         boundary_values=None) -> np.ndarray:
    """
    Per-edge prescribed values (E, ncomp), zero unless given.

    ``boundary_values`` is either a callable of the (m, 2) midpoint array or
    an array with one row per edge.
    """
    values = np.zeros((mesh.n_edges, ncomp))
    if boundary_values is None:
        return values
    if callable(boundary_values):
        given = boundary_values(mesh.edge_midpoints[mesh.boundary])
        values[mesh.boundary] = np.asarray(given, dtype=float).reshape(-1, ncomp)
    else:
        given = np.asarray(boundary_values, dtype=float).reshape(-1, ncomp)
        values[mesh.boundary] = given[mesh.boundary]
    return values


def _csr(rows, cols, vals, shape):
    matrix = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=shape).tocsr()
    matrix.sum_duplicates()
    matrix.sort_indices()
    return matrix


def assemble(mesh: Mesh, element_kind: str, problem_kind: str,
             params: ElementParams = ElementParams(),
             forcing: Optional[Callable] = None,
             boundary_values=None, condense: bool = True):
    """
    Scatter the local matrices of every cell into a global system.

    Boundary edges carry no DOF (homogeneous Dirichlet); prescribed boundary
    midpoint values are moved to the right-hand side.

    :return: (SparseSystem, DofMap)
    """
    check_kinds(element_kind, problem_kind)
    started = time.perf_counter()
    ncomp = n_components(problem_kind)
    dofmap = build_dofmap(mesh, element_kind, ncomp)
    g_edges = edge_boundary_values(mesh, ncomp, boundary_values)

    n = dofmap.n_dofs
    n_solved = dofmap.n_edge_dofs * ncomp if condense else n
    n_scalar = dofmap.n_edge_dofs if condense else dofmap.n_scalar
    rhs = np.zeros(n_solved)
    rows, cols, vals = [], [], []
    b_rows, b_cols, b_vals = [], [], []
    rhs_p = np.zeros(mesh.n_cells) if problem_kind == 'stokes' else None
    areas = np.zeros(mesh.n_cells)
    recovery = {}

    for c in range(mesh.n_cells):
        loc = local_matrices(mesh.quadrilateral(c), element_kind,
                             problem_kind, params, forcing)
        scalar = dofmap.cell_scalar_dofs(mesh, c)
        if condense and loc.interior:
            loc = static_condense(loc)
            recovery[c] = loc.recovery
            scalar = scalar[:4]
        areas[c] = loc.area

        gdofs = dofmap.expand(scalar, n_scalar)
        # lifted boundary values, zero on free and cell DOFs
        k = len(scalar)
        u_b = np.zeros((ncomp, k))
        u_b[:, :4] = g_edges[mesh.cell_edges[c]].T
        u_b = u_b.reshape(-1)
        u_b[gdofs >= 0] = 0.0

        F = loc.F - loc.K @ u_b
        free = np.flatnonzero(gdofs >= 0)
        g = gdofs[free]
        rhs[g] += F[free]
        rows.append(np.repeat(g, len(g)))
        cols.append(np.tile(g, len(g)))
        vals.append(loc.K[np.ix_(free, free)].ravel())

        if loc.B is not None:
            b_rows.append(np.full(len(g), c))
            b_cols.append(g)
            b_vals.append(loc.B[0, free])
            rhs_p[c] -= loc.B[0] @ u_b

    matrix = _csr(rows, cols, vals, (n_solved, n_solved))
    B = None
    if problem_kind == 'stokes':
        B = _csr(b_rows, b_cols, b_vals, (mesh.n_cells, n_solved))

    log.debug("assembled %s/%s: %d cells, %d unknowns, nnz=%d in %.3fs",
              problem_kind, element_kind, mesh.n_cells, n_solved, matrix.nnz,
              time.perf_counter() - started)
    system = SparseSystem(matrix=matrix, rhs=rhs, problem_kind=problem_kind,
                          B=B, rhs_p=rhs_p, areas=areas, recovery=recovery,
                          boundary_values=g_edges)
    return system, dofmap


def interpolate_midpoints(mesh: Mesh, dofmap: DofMap, u_exact: Callable,
                          params: ElementParams = ElementParams()) -> np.ndarray:
    """
    DOF vector of ``u_exact``: values at interior edge midpoints and, for
    augmented parametric cells, the moment of u o F against x1 x2 on K^.
    """
    ncomp = dofmap.n_components
    values = np.zeros((ncomp, dofmap.n_scalar))
    at_mid = np.asarray(u_exact(mesh.edge_midpoints), dtype=float)
    at_mid = at_mid.reshape(mesh.n_edges, ncomp)
    interior = mesh.interior_edges
    values[:, dofmap.edge_dof[interior]] = at_mid[interior].T

    cells = np.flatnonzero(dofmap.cell_dof >= 0)
    if len(cells):
        rule = tensor_rule(params.quad_npts)
        bubble = rule.weights * rule.points[:, 0] * rule.points[:, 1]
        for c in cells:
            points = forward_map(decompose(mesh.quadrilateral(c)), rule.points)
            u = np.asarray(u_exact(points), dtype=float)
            u = u.reshape(len(bubble), ncomp)
            values[:, dofmap.cell_dof[c]] = bubble @ u
    return values.reshape(-1)
