from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre

from dssy_bench.errors import BadParam

MAX_POINTS = 10


@dataclass(frozen=True, eq=False)
class Rule1D:
    """Gauss-Legendre rule on [-1, 1], exact up to degree 2*npts - 1."""
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def npts(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True, eq=False)
class Rule2D:
    """Tensor-product rule on the reference square [-1, 1]^2."""
    points: np.ndarray
    weights: np.ndarray


def _frozen(array):
    array = np.ascontiguousarray(array, dtype=float)
    array.flags.writeable = False
    return array


@lru_cache(maxsize=None)
def gauss1d(npts: int) -> Rule1D:
    if not isinstance(npts, (int, np.integer)) or not 1 <= npts <= MAX_POINTS:
        raise BadParam(f"npts must be an integer in 1..{MAX_POINTS}, got {npts!r}")
    if npts == 3:
        xi = np.sqrt(3.0 / 5.0)
        nodes = np.array([-xi, 0.0, xi])
        weights = np.array([5.0, 8.0, 5.0]) / 9.0
    else:
        nodes, weights = legendre.leggauss(int(npts))
    return Rule1D(nodes=_frozen(nodes), weights=_frozen(weights))


@lru_cache(maxsize=None)
def tensor_rule(npts: int) -> Rule2D:
    rule = gauss1d(npts)
    x1, x2 = np.meshgrid(rule.nodes, rule.nodes, indexing='ij')
    w = np.outer(rule.weights, rule.weights)
    points = np.stack([x1.ravel(), x2.ravel()], axis=-1)
    return Rule2D(points=_frozen(points), weights=_frozen(w.ravel()))


def edge_mean(f: Callable, a, b, npts: int = 3) -> float:
    """
    Arc-length mean of ``f`` over the segment [a, b].

    ``f`` is called once with the (npts, 2) array of Gauss points.
    """
    rule = gauss1d(npts)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    points = 0.5 * (a + b) + np.outer(rule.nodes, 0.5 * (b - a))
    values = np.broadcast_to(np.asarray(f(points), dtype=float), (rule.npts,))
    return 0.5 * float(rule.weights @ values)
