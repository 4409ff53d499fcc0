from dataclasses import dataclass
from typing import Optional

import numpy as np

from dssy_bench.geometry import REFERENCE_VERTICES
from dssy_bench.mesh import Mesh
from dssy_bench.quadrature import gauss1d

from .condense import recover_interior
from .dofmap import DofMap
from .local import ElementParams, cell_basis
from .system import SparseSystem


@dataclass(frozen=True, eq=False)
class DiscreteField:
    """
    A finite element function: one value per edge and component (boundary
    edges included) plus, for augmented parametric cells, one cell value.
    """
    mesh: Mesh
    dofmap: DofMap
    params: ElementParams
    edge_values: np.ndarray
    cell_values: Optional[np.ndarray] = None

    @property
    def n_components(self) -> int:
        return self.edge_values.shape[1]

    @classmethod
    def from_dofs(cls, mesh: Mesh, dofmap: DofMap, dofs,
                  params: ElementParams = ElementParams(),
                  boundary_values: Optional[np.ndarray] = None):
        """Build from a full DOF vector (edge DOFs, then cell DOFs)."""
        ncomp = dofmap.n_components
        dofs = np.asarray(dofs, dtype=float).reshape(ncomp, dofmap.n_scalar)
        edge_values = np.zeros((mesh.n_edges, ncomp))
        if boundary_values is not None:
            edge_values[mesh.boundary] = boundary_values[mesh.boundary]
        interior = mesh.interior_edges
        edge_values[interior] = dofs[:, dofmap.edge_dof[interior]].T

        cell_values = None
        cells = np.flatnonzero(dofmap.cell_dof >= 0)
        if len(cells):
            cell_values = np.zeros(mesh.n_cells)
            cell_values[cells] = dofs[0, dofmap.cell_dof[cells]]
        return cls(mesh=mesh, dofmap=dofmap, params=params,
                   edge_values=edge_values, cell_values=cell_values)

    @classmethod
    def from_solution(cls, mesh: Mesh, dofmap: DofMap, system: SparseSystem,
                      x, params: ElementParams = ElementParams()):
        """
        Build from the solution of ``system``, restoring condensed cell
        DOFs from the edge values.
        """
        ncomp = dofmap.n_components
        x = np.asarray(x, dtype=float)
        if len(x) == dofmap.n_dofs:
            return cls.from_dofs(mesh, dofmap, x, params,
                                 system.boundary_values)

        dofs = np.zeros((ncomp, dofmap.n_scalar))
        dofs[:, :dofmap.n_edge_dofs] = x.reshape(ncomp, dofmap.n_edge_dofs)
        field = cls.from_dofs(mesh, dofmap, dofs, params,
                              system.boundary_values)
        if system.recovery:
            cell_values = np.zeros(mesh.n_cells)
            for c, recovery in system.recovery.items():
                u_e = field.edge_values[mesh.cell_edges[c], 0]
                cell_values[c] = recover_interior(recovery, u_e)[0]
            field = cls(mesh=mesh, dofmap=dofmap, params=params,
                        edge_values=field.edge_values, cell_values=cell_values)
        return field

    def local_dofs(self, c: int) -> np.ndarray:
        """(k, ncomp) local coefficients of cell c."""
        local = self.edge_values[self.mesh.cell_edges[c]]
        if self.dofmap.cell_dof[c] >= 0:
            cell = np.zeros((1, self.n_components))
            if self.cell_values is not None:
                cell[0, 0] = self.cell_values[c]
            local = np.vstack([local, cell])
        return local

    def evaluate_on_cell(self, c: int, xhat, weights=None):
        """
        Values (m, ncomp), physical gradients (m, ncomp, 2), physical points
        and |det DF|-scaled weights at reference points ``xhat``.
        """
        xhat = np.atleast_2d(np.asarray(xhat, dtype=float))
        if weights is None:
            weights = np.ones(len(xhat))
        basis = cell_basis(self.mesh.quadrilateral(c), self.dofmap.element_kind,
                           xhat, weights, self.params)
        coef = self.local_dofs(c)
        values = basis.values.T @ coef
        grads = np.einsum('kmd,kc->mcd', basis.grads, coef)
        return values, grads, basis.points, basis.weights

    def edge_trace_means(self, e: int, npts: int = 3) -> np.ndarray:
        """
        Mean of the trace of each incident cell over edge e, shape
        (n_incident, ncomp).
        """
        rule = gauss1d(npts)
        cells, local = np.nonzero(self.mesh.cell_edges == e)
        means = []
        for c, j in zip(cells, local):
            a, b = REFERENCE_VERTICES[j - 1], REFERENCE_VERTICES[j]
            xhat = 0.5 * (a + b) + np.outer(rule.nodes, 0.5 * (b - a))
            values, _, _, _ = self.evaluate_on_cell(c, xhat)
            means.append(0.5 * rule.weights @ values)
        return np.array(means)
