"""Composite Chebyshev panel grids with spectral cumulative integration.

Every panel carries the same Chebyshev-Lobatto nodes, so an iterated integral over an ordered simplex
reduces to repeated application of one small integration matrix followed by a running sum of panel
totals.
"""
import logging
import math
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial import chebyshev

logger = logging.getLogger(__name__)

PILOT_POINTS = 2049


@lru_cache(maxsize=16)
def reference_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes on [-1, 1] and the matrix mapping samples to ``int_{-1}^{x_i}`` of their interpolant."""
    x = -np.cos(np.pi * np.arange(nodes) / (nodes - 1))
    vander = chebyshev.chebvander(x, nodes - 1)
    primitives = np.empty((nodes, nodes))
    for k in range(nodes):
        unit = np.zeros(nodes)
        unit[k] = 1.0
        primitives[:, k] = chebyshev.chebval(x, chebyshev.chebint(unit, lbnd=-1))
    integration = np.linalg.solve(vander.T, primitives.T).T
    x.setflags(write=False)
    integration.setflags(write=False)
    return x, integration


class PanelGrid:
    """Panels ``[edges[p], edges[p+1]]``, each sampled at the same Chebyshev-Lobatto nodes.

    Sampled arrays have shape ``(panels, nodes)``; junction points appear twice.
    """

    def __init__(self, edges: np.ndarray, nodes: int = 17):
        edges = np.asarray(edges, dtype=float)
        if edges.ndim != 1 or len(edges) < 2:
            raise ValueError("A panel grid needs at least two edges")
        if np.any(np.diff(edges) < 0):
            raise ValueError("Panel edges must be non-decreasing")
        self.edges = edges
        self.nodes = nodes
        x, self._integration = reference_rule(nodes)
        self._half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        self.t = mid[:, None] + self._half[:, None] * x[None, :]

    @property
    def panels(self) -> int:
        return len(self.edges) - 1

    @property
    def size(self) -> int:
        return self.t.size

    def cumulative(self, f: np.ndarray) -> np.ndarray:
        """Running integral ``int_{t0}^{t} f`` at every grid point."""
        local = self._half[:, None] * (f @ self._integration.T)
        totals = local[:, -1]
        offsets = np.concatenate(([0.0], np.cumsum(totals)[:-1]))
        return local + offsets[:, None]

    def integral(self, f: np.ndarray):
        return self.cumulative(f)[-1, -1]

    def refined(self) -> "PanelGrid":
        """Grid with every panel split in two."""
        mids = 0.5 * (self.edges[:-1] + self.edges[1:])
        edges = np.empty(2 * self.panels + 1)
        edges[0::2] = self.edges
        edges[1::2] = mids
        return PanelGrid(edges, self.nodes)

    def __repr__(self):
        return f"<PanelGrid(panels={self.panels}, nodes={self.nodes}, t=[{self.edges[0]}, {self.edges[-1]}])>"


def variation_density(v: Callable[[np.ndarray], np.ndarray], t0: float, t1: float) -> Tuple[np.ndarray, np.ndarray]:
    """Relative rate of change ``|v'| / max|v|`` of a drive on a uniform pilot grid."""
    pilot = np.linspace(t0, t1, PILOT_POINTS)
    values = np.asarray(v(pilot), dtype=complex)
    scale = np.max(np.abs(values))
    if scale == 0:
        return pilot, np.zeros_like(pilot)
    return pilot, np.abs(np.gradient(values, pilot)) / scale


def panel_edges(
    t0: float,
    t1: float,
    density: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    v: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    radians_per_panel: float = 3.0,
    min_panels: int = 8,
) -> np.ndarray:
    """Place panel edges so that each panel sees at most ``radians_per_panel`` of drive variation.

    Args:
        t0: start of the window
        t1: end of the window
        density: variation rate of the drive (for example its phase rate); estimated from ``v`` if missing
        v: the drive, sampled on a pilot grid when no density is given
        radians_per_panel: variation budget of a single panel
        min_panels: lower bound on the number of panels, spread uniformly

    Returns:
        Strictly increasing edge array including both endpoints.
    """
    if t1 == t0:
        return np.array([t0, t1])
    if density is not None:
        pilot = np.linspace(t0, t1, PILOT_POINTS)
        rate = np.abs(np.asarray(density(pilot), dtype=float))
    elif v is not None:
        pilot, rate = variation_density(v, t0, t1)
    else:
        pilot, rate = np.linspace(t0, t1, PILOT_POINTS), np.zeros(PILOT_POINTS)

    weight = rate / radians_per_panel + min_panels / (t1 - t0)
    measure = np.concatenate(([0.0], np.cumsum(0.5 * (weight[1:] + weight[:-1]) * np.diff(pilot))))
    count = max(min_panels, int(math.ceil(measure[-1])))
    edges = np.interp(np.linspace(0.0, measure[-1], count + 1), measure, pilot)
    edges[0], edges[-1] = t0, t1
    logger.debug("Placed %d panels on [%g, %g]", count, t0, t1)
    return edges
