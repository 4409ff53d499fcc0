from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dssy_bench.errors import BadParam, ConvexityFailure, NonManifold
from dssy_bench.geometry import Quadrilateral, convexity_margin, decompose_many

# Local edge j joins cell vertices (j-1, j), vertex -1 being vertex 3.
LOCAL_EDGES = np.array([[3, 0], [0, 1], [1, 2], [2, 3]])


def _frozen(array, dtype):
    array = np.ascontiguousarray(array, dtype=dtype)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Quadrilateral mesh of the unit square.

    ``edges`` holds sorted node pairs; ``cell_edges[c, j]`` is the global
    index of local edge j of cell c and ``cell_edge_orientation[c, j]`` is +1
    when the local pair (c[j-1], c[j]) runs in the stored direction.
    """
    nodes: np.ndarray
    cells: np.ndarray
    edges: np.ndarray
    edge_midpoints: np.ndarray
    boundary: np.ndarray
    cell_edges: np.ndarray
    cell_edge_orientation: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def interior_edges(self) -> np.ndarray:
        return np.flatnonzero(~self.boundary)

    @property
    def n_interior_edges(self) -> int:
        return len(self.interior_edges)

    @cached_property
    def cell_vertices(self) -> np.ndarray:
        return self.nodes[self.cells]

    @cached_property
    def cell_diameters(self) -> np.ndarray:
        v = self.cell_vertices
        diff = v[:, :, None, :] - v[:, None, :, :]
        return np.sqrt((diff ** 2).sum(axis=-1)).max(axis=(1, 2))

    @cached_property
    def h(self) -> float:
        return float(self.cell_diameters.max())

    def quadrilateral(self, c: int) -> Quadrilateral:
        return Quadrilateral(self.cell_vertices[c])


def build_topology(nodes, cells) -> Mesh:
    nodes = np.asarray(nodes, dtype=float)
    cells = np.asarray(cells)
    if nodes.ndim != 2 or nodes.shape[1] != 2:
        raise BadParam(f"nodes must have shape (N, 2), got {nodes.shape}")
    if cells.ndim != 2 or cells.shape[1] != 4 or len(cells) == 0:
        raise BadParam(f"cells must have shape (C, 4), got {cells.shape}")
    if cells.min() < 0 or cells.max() >= len(nodes):
        raise BadParam("cells reference nodes outside the node list")
    cells = cells.astype(np.int64)

    pairs = cells[:, LOCAL_EDGES]
    keys = np.sort(pairs, axis=-1).reshape(-1, 2)
    edges, inverse, counts = np.unique(
        keys, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)
    if counts.max() > 2:
        bad = edges[np.argmax(counts)]
        raise NonManifold(
            f"edge {tuple(bad.tolist())} is shared by {counts.max()} cells",
            edge=bad)

    orientation = np.where(pairs[..., 0] < pairs[..., 1], 1, -1)
    return Mesh(
        nodes=_frozen(nodes, float),
        cells=_frozen(cells, np.int64),
        edges=_frozen(edges, np.int64),
        edge_midpoints=_frozen(nodes[edges].mean(axis=1), float),
        boundary=_frozen(counts == 1, bool),
        cell_edges=_frozen(inverse.reshape(-1, 4), np.int64),
        cell_edge_orientation=_frozen(orientation, np.int8),
    )


def validate_cells(nodes, cells) -> np.ndarray:
    """
    Convexity margins of every cell.

    :raises ConvexityFailure: if a cell is inverted, degenerate or not
        strictly convex
    """
    _, _, _, s_tilde, det = decompose_many(np.asarray(nodes)[np.asarray(cells)])
    bad = np.flatnonzero(~(det > 0))
    if len(bad):
        raise ConvexityFailure(
            f"{len(bad)} cells have det A <= 0 (first: cell {bad[0]})",
            cells=bad)
    margins = 1.0 - np.abs(s_tilde).sum(axis=1)
    bad = np.flatnonzero(margins <= 0)
    if len(bad):
        raise ConvexityFailure(
            f"{len(bad)} cells are not strictly convex (first: cell {bad[0]}, "
            f"margin {convexity_margin(s_tilde[bad[0]]):.3e})", cells=bad)
    return margins
