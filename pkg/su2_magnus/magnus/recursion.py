"""Commutator-free Magnus recursion in the su(2) components.

With ``Omega = A sigma+ + A* sigma- + C sigma_z`` and ``H = v sigma+ + v* sigma-`` the generator obeys
``Omega' = sum_j (B_j / j!) [(-i) ad_Omega]^j H``. One application of ``(-i) ad_Omega`` maps the
components ``(x, c)`` of a traceless Hermitian operator to

    x' = 2i (A c - C x),    c' = 2 Im(A x*),

so the order-``n`` parts ``a_n^(j), c_n^(j)`` of the nested brackets follow from lower orders:

    a_n^(j) = 2i sum_{m=1}^{n-j} [A_m c_{n-m}^(j-1) - C_m a_{n-m}^(j-1)]
    c_n^(j) = 2 sum_{m=1}^{n-j} Im[A_m a_{n-m}^(j-1)*]

starting from ``a_1^(0) = v`` and ``c_1^(0) = 0``. ``A_m`` and ``C_m`` are running integrals on the grid.
"""
import logging
import math
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from scipy import special

from su2_magnus.exceptions import GridTooCoarse
from su2_magnus.magnus.drive import ScalarDrive
from su2_magnus.magnus.grid import PanelGrid
from su2_magnus.settings import get_settings
from su2_magnus.su2 import AngleAxis, MagnusCoefficients, compose_bch

logger = logging.getLogger(__name__)

BERNOULLI_ORDER = 12


@lru_cache(maxsize=4)
def bernoulli_weights(order: int = BERNOULLI_ORDER) -> Tuple[float, ...]:
    """``B_j / j!`` for ``j = 0..order`` with ``B_1 = -1/2``."""
    numbers = special.bernoulli(max(order, 1))
    return tuple(float(numbers[j]) / math.factorial(j) for j in range(order + 1))


class RecursionState:
    """Tables ``a_n^(j)(t)`` and ``c_n^(j)(t)`` of one drive sampled on one grid.

    Not meant to be shared between threads; build one per (drive, order) evaluation.
    """

    def __init__(self, grid: PanelGrid, v: np.ndarray, order: int):
        if order < 1:
            raise ValueError("Magnus order must be at least 1")
        self.grid = grid
        self.order = order
        self.a: Dict[Tuple[int, int], np.ndarray] = {(1, 0): v.astype(complex)}
        self.c: Dict[Tuple[int, int], np.ndarray] = {(1, 0): np.zeros(v.shape)}
        self.A: List[np.ndarray] = [np.zeros(v.shape, dtype=complex)]
        self.C: List[np.ndarray] = [np.zeros(v.shape)]
        self.weights = bernoulli_weights(max(order, BERNOULLI_ORDER))
        for n in range(1, order + 1):
            self._advance(n)

    def _advance(self, n: int):
        shape = self.a[(1, 0)].shape
        for j in range(1, n):
            a_nj = np.zeros(shape, dtype=complex)
            c_nj = np.zeros(shape)
            for m in range(1, n - j + 1):
                a_prev = self.a.get((n - m, j - 1))
                if a_prev is None:
                    continue
                c_prev = self.c[(n - m, j - 1)]
                a_nj += 2j * (self.A[m] * c_prev - self.C[m] * a_prev)
                c_nj += 2.0 * np.imag(self.A[m] * np.conj(a_prev))
            self.a[(n, j)] = a_nj
            self.c[(n, j)] = c_nj

        rate_a = np.zeros(shape, dtype=complex)
        rate_c = np.zeros(shape)
        for j in range(n):
            if (n, j) in self.a:
                rate_a += self.weights[j] * self.a[(n, j)]
                rate_c += self.weights[j] * self.c[(n, j)]
        self.A.append(self.grid.cumulative(rate_a))
        self.C.append(self.grid.cumulative(rate_c))

    def coefficients(self, time: float = None) -> MagnusCoefficients:
        """Coefficients at the end of the grid."""
        return MagnusCoefficients(
            order=self.order,
            A=[self.A[n][-1, -1] for n in range(1, self.order + 1)],
            C=[self.C[n][-1, -1] for n in range(1, self.order + 1)],
            time=float(self.grid.edges[-1]) if time is None else time,
        )

    def history(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Grid times and running ``A_n(t)``, ``C_n(t)`` stacked as ``(order, points)`` arrays."""
        t = self.grid.t.ravel()
        A = np.stack([self.A[n].ravel() for n in range(1, self.order + 1)])
        C = np.stack([self.C[n].ravel() for n in range(1, self.order + 1)])
        return t, A, C


def _difference(coarse: MagnusCoefficients, fine: MagnusCoefficients) -> float:
    diffs = [abs(a - b) for a, b in zip(coarse.A, fine.A)] + [abs(a - b) for a, b in zip(coarse.C, fine.C)]
    return max(diffs)


def recursive_magnus(d: ScalarDrive, order: int, grid_points: int = None, tol: float = None) -> MagnusCoefficients:
    """Magnus coefficients ``A_1..A_N``, ``C_1..C_N`` at the end of the drive window.

    Args:
        d: drive and window
        order: truncation order N
        grid_points: minimal number of sample points; the panel layout may add more where v varies fast
        tol: requested accuracy; doubling the grid must change every coefficient by less than ten times this

    Raises:
        GridTooCoarse: if the doubled grid disagrees with the original one beyond ``10 * tol``
    """
    settings = get_settings()
    tol = tol or settings.recursion_tolerance
    state = build_state(d, order, grid_points)
    coarse = state.coefficients()
    if d.t1 == d.t0:
        return coarse
    fine_grid = state.grid.refined()
    fine = RecursionState(fine_grid, d.sample(fine_grid.t), order).coefficients()
    change = _difference(coarse, fine)
    logger.debug("Recursion order %d on %d panels, doubling changed results by %.2e", order, state.grid.panels, change)
    if change > 10 * tol:
        raise GridTooCoarse(
            f"Doubling the grid ({state.grid.panels} panels) changed the order-{order} coefficients by "
            f"{change:.2e} > {10 * tol:.1e}"
        )
    return fine


def build_state(d: ScalarDrive, order: int, grid_points: int = None) -> RecursionState:
    settings = get_settings()
    min_panels = int(math.ceil(grid_points / settings.nodes_per_panel)) if grid_points else None
    grid = d.grid(min_panels=min_panels)
    return RecursionState(grid, d.sample(grid.t), order)


def magnus_history(d: ScalarDrive, order: int, grid_points: int = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Time-resolved coefficients ``A_n(t)``, ``C_n(t)`` on the quadrature grid of ``d``."""
    return build_state(d, order, grid_points).history()


def piecewise_magnus(d: ScalarDrive, breakpoints, order: int, tol: float = None) -> AngleAxis:
    """Magnus expansion applied segment by segment and recomposed exactly.

    Each segment between consecutive breakpoints gets its own expansion (and its own convergence
    radius); the segment propagators are multiplied in time order.
    """
    cuts = [d.t0] + sorted(b for b in breakpoints if d.t0 < b < d.t1) + [d.t1]
    total = AngleAxis.identity()
    for start, stop in zip(cuts[:-1], cuts[1:]):
        segment = recursive_magnus(d.restricted(t0=start, t1=stop), order, tol=tol)
        total = compose_bch(segment.angle_axis(), total)
    return total


def magnus_propagator(mc: MagnusCoefficients) -> np.ndarray:
    """``exp(-i Omega)`` of the truncated series; unitary for every truncation order."""
    return mc.propagator()
