from dataclasses import dataclass

import numpy as np

from dssy_bench.errors import BadParam
from dssy_bench.geometry import RECTANGLE_TOL, decompose_many
from dssy_bench.mesh import Mesh

from .local import ELEMENT_KINDS


@dataclass(frozen=True, eq=False)
class DofMap:
    """
    Global numbering of the midpoint DOFs.

    Scalar indices run over interior edges first, then over the cells that
    carry an extra cell DOF (parametric element on non-rectangles).
    ``edge_dof`` and ``cell_dof`` hold -1 where there is no DOF. Vector
    fields are component blocked: component c of scalar index i is
    c * n_scalar + i.
    """
    element_kind: str
    n_components: int
    edge_dof: np.ndarray
    cell_dof: np.ndarray
    boundary_edges: np.ndarray

    @property
    def n_edge_dofs(self) -> int:
        return int((self.edge_dof >= 0).sum())

    @property
    def n_cell_dofs(self) -> int:
        return int((self.cell_dof >= 0).sum())

    @property
    def n_scalar(self) -> int:
        return self.n_edge_dofs + self.n_cell_dofs

    @property
    def n_dofs(self) -> int:
        return self.n_components * self.n_scalar

    def cell_scalar_dofs(self, mesh: Mesh, c: int) -> np.ndarray:
        """Scalar indices of the local DOFs of cell c (edges, then cell)."""
        dofs = self.edge_dof[mesh.cell_edges[c]]
        if self.cell_dof[c] >= 0:
            dofs = np.append(dofs, self.cell_dof[c])
        return dofs

    def expand(self, scalar_dofs: np.ndarray, n_scalar=None) -> np.ndarray:
        """Component blocked indices for the scalar indices given."""
        n_scalar = self.n_scalar if n_scalar is None else n_scalar
        blocks = [np.where(scalar_dofs >= 0, scalar_dofs + c * n_scalar, -1)
                  for c in range(self.n_components)]
        return np.concatenate(blocks)


def augmented_cells(mesh: Mesh) -> np.ndarray:
    """Mask of cells whose parametric space needs the x1 x2 bubble."""
    _, _, d, _, _ = decompose_many(mesh.cell_vertices)
    return np.linalg.norm(d, axis=1) > RECTANGLE_TOL * mesh.cell_diameters


def build_dofmap(mesh: Mesh, element_kind: str,
                 n_components: int = 1) -> DofMap:
    if element_kind not in ELEMENT_KINDS:
        raise BadParam(f"unknown element kind {element_kind!r}")

    edge_dof = np.full(mesh.n_edges, -1, dtype=np.int64)
    edge_dof[mesh.interior_edges] = np.arange(mesh.n_interior_edges)

    cell_dof = np.full(mesh.n_cells, -1, dtype=np.int64)
    if element_kind == 'p':
        extra = np.flatnonzero(augmented_cells(mesh))
        cell_dof[extra] = mesh.n_interior_edges + np.arange(len(extra))

    return DofMap(
        element_kind=element_kind,
        n_components=n_components,
        edge_dof=edge_dof,
        cell_dof=cell_dof,
        boundary_edges=np.flatnonzero(mesh.boundary),
    )
