"""Closed forms of the three leading non-vanishing Magnus coefficients.

    A1 = int v
    C2 = int int_{t2<t1} Im[v1 v2*]
    A3 = (2i/3) int int int_{t3<t2<t1} [Im(v2 v3*) v1 + Im(v2 v1*) v3]

The ordered-simplex integrals are evaluated as iterated cumulative integrals on a panel grid that is
doubled until two successive results agree within the requested tolerance.
"""
import logging
from typing import Callable

import numpy as np

from su2_magnus.exceptions import QuadratureFailure
from su2_magnus.magnus.drive import ScalarDrive
from su2_magnus.magnus.grid import PanelGrid
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)


def _a1_on_grid(grid: PanelGrid, v: np.ndarray) -> complex:
    return complex(grid.integral(v))


def _c2_on_grid(grid: PanelGrid, v: np.ndarray) -> float:
    a1 = grid.cumulative(v)
    return float(grid.integral(np.imag(v * np.conj(a1))))


def _a3_on_grid(grid: PanelGrid, v: np.ndarray) -> complex:
    a1 = grid.cumulative(v)
    c2 = grid.cumulative(np.imag(v * np.conj(a1)))
    p = grid.cumulative(v * a1)
    q = grid.cumulative(np.conj(v) * a1)
    # int_{t2<t1} Im(v2 v1*) A1(t2) dt2 expanded so that only running integrals are needed
    inner = (np.conj(v) * p - v * q) / 2j
    return complex(2j / 3 * grid.integral(v * c2 + inner))


def _until_converged(d: ScalarDrive, evaluate: Callable[[PanelGrid, np.ndarray], complex], tol: float, name: str):
    settings = get_settings()
    if d.t1 == d.t0:
        empty = PanelGrid(np.array([d.t0, d.t1]), settings.nodes_per_panel)
        return evaluate(empty, np.zeros((1, settings.nodes_per_panel)))
    grid = d.grid()
    value = evaluate(grid, d.sample(grid.t))
    for _ in range(settings.max_doublings):
        grid = grid.refined()
        refined = evaluate(grid, d.sample(grid.t))
        change = abs(refined - value)
        value = refined
        if change <= tol:
            logger.debug("%s converged on %d panels (change %.2e)", name, grid.panels, change)
            return value
    raise QuadratureFailure(
        f"{name} did not reach tolerance {tol:.1e} after {settings.max_doublings} grid doublings "
        f"(last change {change:.2e})"
    )


def _window(d: ScalarDrive, t: float = None) -> ScalarDrive:
    if t is None:
        return d
    if not d.t0 <= t <= d.t1:
        raise ValueError(f"Evaluation time {t} outside the drive window [{d.t0}, {d.t1}]")
    return d.restricted(t1=t)


def closed_form_a1(d: ScalarDrive, t: float = None, tol: float = None) -> complex:
    """First-order coefficient ``A_1(t) = int_{t0}^t v``.

    Raises:
        QuadratureFailure: if successive grid doublings keep changing the result by more than ``tol``
    """
    tol = tol or get_settings().a1_tolerance
    return complex(_until_converged(_window(d, t), _a1_on_grid, tol, "A1"))


def closed_form_c2(d: ScalarDrive, t: float = None, tol: float = None) -> float:
    tol = tol or get_settings().c2_tolerance
    return float(_until_converged(_window(d, t), _c2_on_grid, tol, "C2"))


def closed_form_a3(d: ScalarDrive, t: float = None, tol: float = None) -> complex:
    tol = tol or get_settings().a3_tolerance
    return complex(_until_converged(_window(d, t), _a3_on_grid, tol, "A3"))
