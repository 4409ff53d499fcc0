import logging

import numpy as np

from dssy_bench.errors import BadParam, ConvexityFailure
from dssy_bench.geometry import decompose_many

from .topology import Mesh, build_topology, validate_cells

log = logging.getLogger(__name__)

MAX_RESAMPLES = 100


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise BadParam(f"n must be an integer >= 2, got {n!r}")


def _grid(n):
    """Nodes of the uniform n x n grid (index j*(n+1) + i) and its cells."""
    t = np.arange(n + 1) / n
    x, y = np.meshgrid(t, t)
    nodes = np.stack([x.ravel(), y.ravel()], axis=-1)

    def k(i, j):
        return j * (n + 1) + i

    i, j = np.meshgrid(np.arange(n), np.arange(n))
    i, j = i.ravel(), j.ravel()
    cells = np.stack(
        [k(i + 1, j + 1), k(i, j + 1), k(i, j), k(i + 1, j)], axis=-1)
    return nodes, cells


def _interior_nodes(n):
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1))
    return ((i > 0) & (i < n) & (j > 0) & (j < n)).ravel()


def theta_mesh(n: int, theta: float) -> Mesh:
    """
    Trapezoidal mesh: interior grid rows are shifted vertically by
    +-theta/(2n), alternating in a checkerboard pattern.

    Cells are rectangles at theta = 0; as theta approaches 1 the short
    vertical side of every interior trapezoid shrinks to a point.
    """
    _check_n(n)
    if not 0.0 <= theta < 1.0:
        raise BadParam(f"theta must lie in [0, 1), got {theta!r}")

    nodes, cells = _grid(n)
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1))
    i, j = i.ravel(), j.ravel()
    inner_row = (j > 0) & (j < n)
    shift = np.where(inner_row, (-1.0) ** (i + j) * theta / (2 * n), 0.0)
    nodes[:, 1] += shift

    validate_cells(nodes, cells)
    log.debug("theta mesh n=%d theta=%g", n, theta)
    return build_topology(nodes, cells)


def _bad_cells(nodes, cells):
    _, _, _, s_tilde, det = decompose_many(nodes[cells])
    margins = 1.0 - np.abs(s_tilde).sum(axis=1)
    return np.flatnonzero(~((det > 0) & (margins > 0)))


def random_mesh(n: int, alpha: float, seed: int) -> Mesh:
    """
    Uniform grid with every interior node moved by an independent uniform
    sample in [-alpha/n, alpha/n]^2. Nodes of non-convex cells are redrawn.
    """
    _check_n(n)
    if not 0.0 <= alpha < 0.5:
        raise BadParam(f"alpha must lie in [0, 0.5), got {alpha!r}")

    rng = np.random.default_rng(seed)
    base, cells = _grid(n)
    movable = _interior_nodes(n)
    radius = alpha / n

    def draw(count):
        return rng.uniform(-radius, radius, size=(count, 2))

    nodes = base.copy()
    nodes[movable] += draw(int(movable.sum()))

    for attempt in range(MAX_RESAMPLES + 1):
        bad = _bad_cells(nodes, cells)
        if not len(bad):
            break
        if attempt == MAX_RESAMPLES:
            raise ConvexityFailure(
                f"random mesh n={n} alpha={alpha} seed={seed} still has "
                f"{len(bad)} non-convex cells after {MAX_RESAMPLES} resamples",
                cells=bad)
        redo = np.zeros(len(nodes), dtype=bool)
        redo[np.unique(cells[bad])] = True
        redo &= movable
        log.warning("resampling %d nodes of %d non-convex cells",
                    int(redo.sum()), len(bad))
        nodes[redo] = base[redo] + draw(int(redo.sum()))

    log.debug("random mesh n=%d alpha=%g seed=%s", n, alpha, seed)
    return build_topology(nodes, cells)
