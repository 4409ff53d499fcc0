import logging
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

import numpy as np

from dssy_bench.errors import DssyError, MeshFormatError, OutputError
from dssy_bench.mesh import Mesh, build_topology

log = logging.getLogger(__name__)

HEADER = 'quadmesh v1'


class MeshRepository:
    """
    Stores meshes as plain text:

        quadmesh v1 <n_nodes> <n_cells>
        n <x> <y>            (one per node, 17 significant digits)
        c <i0> <i1> <i2> <i3>  (one per cell)

    Relative paths are resolved against ``root``.
    """

    def __init__(self, root: Optional[Union[str, Path]] = None):
        self.root = Path(root) if root is not None else None

    def _path(self, path) -> Path:
        path = Path(path)
        if self.root is not None and not path.is_absolute():
            path = self.root / path
        return path

    def dump(self, mesh: Mesh, stream: TextIO) -> None:
        stream.write(f"{HEADER} {mesh.n_nodes} {mesh.n_cells}\n")
        for x, y in mesh.nodes:
            stream.write(f"n {x:.17g} {y:.17g}\n")
        for cell in mesh.cells:
            stream.write("c {} {} {} {}\n".format(*cell.tolist()))

    def parse(self, lines: Iterable[str]) -> Mesh:
        lines = [line.strip() for line in lines if line.strip()]
        if not lines:
            raise MeshFormatError("empty mesh file")

        header = lines[0].split()
        if len(header) != 4 or ' '.join(header[:2]) != HEADER:
            raise MeshFormatError(f"bad header {lines[0]!r}")
        try:
            n_nodes, n_cells = int(header[2]), int(header[3])
        except ValueError:
            raise MeshFormatError(f"bad header counts {lines[0]!r}")
        if len(lines) != 1 + n_nodes + n_cells:
            raise MeshFormatError(
                f"expected {n_nodes} nodes and {n_cells} cells, "
                f"found {len(lines) - 1} records")

        nodes = np.empty((n_nodes, 2))
        cells = np.empty((n_cells, 4), dtype=np.int64)
        for k, line in enumerate(lines[1:], start=2):
            fields = line.split()
            row = k - 2
            try:
                if row < n_nodes:
                    if fields[0] != 'n' or len(fields) != 3:
                        raise ValueError
                    nodes[row] = [float(fields[1]), float(fields[2])]
                else:
                    if fields[0] != 'c' or len(fields) != 5:
                        raise ValueError
                    cells[row - n_nodes] = [int(f) for f in fields[1:]]
            except ValueError:
                raise MeshFormatError(f"line {k}: malformed record {line!r}")

        try:
            return build_topology(nodes, cells)
        except DssyError as e:
            raise MeshFormatError(f"inconsistent mesh: {e}")

    def save(self, mesh: Mesh, path) -> Path:
        path = self._path(path)
        try:
            stream = path.open('w', encoding='utf-8')
        except OSError as e:
            raise OutputError(f"cannot write {path}: {e.strerror}")
        with stream:
            self.dump(mesh, stream)
        log.info("wrote mesh with %d cells to %s", mesh.n_cells, path)
        return path

    def load(self, path) -> Mesh:
        path = self._path(path)
        try:
            with path.open(encoding='utf-8') as stream:
                return self.parse(stream)
        except OSError as e:
            raise MeshFormatError(f"cannot read {path}: {e.strerror}")
