"""Reference propagators from direct integration of ``dU/dt = -i H(t) U``.

The window is cut into short segments. Each segment is integrated from the identity with an
adaptive eighth-order Runge-Kutta scheme, projected back onto SU(2) and multiplied into the total.
"""
import logging
import math
from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, validator
from scipy import integrate, linalg

from su2_magnus.constants import MethodKind
from su2_magnus.exceptions import StepSizeUnderflow
from su2_magnus.floquet import MagnusMethod, ParityOp, QuasienergyResult, bz_fold, fold_count, gp_sine_of
from su2_magnus.pictures import DriveSpec
from su2_magnus.settings import get_settings
from su2_magnus.su2 import IDENTITY, frobenius_distance, principal_log

logger = logging.getLogger(__name__)

Hamiltonian = Callable[[float], Tuple[complex, float]]


class PropagatorRequest(BaseModel):
    """``H(t) = A_h sigma+ + A_h* sigma- + C_h sigma_z`` on ``[t0, t1]`` (``t1 < t0`` propagates backwards)."""

    hamiltonian: Hamiltonian
    t0: float
    t1: float
    tolerance: float = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @validator("tolerance", pre=True, always=True)
    def tolerance_range(cls, v):
        if v is None:
            return get_settings().oracle_tolerance
        if not 1e-13 <= v <= 1e-6:
            raise ValueError(f"Oracle tolerance must lie in [1e-13, 1e-6], got {v}")
        return v

    @validator("t1")
    def finite_window(cls, v, values):
        if not (math.isfinite(v) and math.isfinite(values.get("t0", 0.0))):
            raise ValueError("Propagation windows must be finite")
        return v


def physical_hamiltonian(spec: DriveSpec) -> Hamiltonian:
    """``H = (Delta/2) sigma_z + (f/2) sigma_x`` in the ``(A_h, C_h)`` form."""

    def hamiltonian(t: float) -> Tuple[complex, float]:
        return complex(0.5 * spec.f(t)), 0.5 * spec.delta

    return hamiltonian


def _project(m: np.ndarray) -> np.ndarray:
    u, _ = linalg.polar(m)
    return u / np.sqrt(np.linalg.det(u))


def _segment(req: PropagatorRequest, start: float, stop: float) -> Tuple[np.ndarray, int]:
    def rhs(t, y):
        a, c = req.hamiltonian(t)
        h = np.array([[c, a], [np.conj(a), -c]], dtype=complex)
        return (-1j * h @ y.reshape(2, 2)).ravel()

    solution = integrate.solve_ivp(
        rhs,
        (start, stop),
        IDENTITY.ravel().astype(complex),
        method="DOP853",
        rtol=req.tolerance,
        atol=req.tolerance,
    )
    if solution.status != 0:
        raise StepSizeUnderflow(f"Integration failed on [{start}, {stop}]: {solution.message}")
    return _project(solution.y[:, -1].reshape(2, 2)), solution.nfev


def propagate(req: PropagatorRequest) -> np.ndarray:
    """``U(t1, t0)`` of the requested Hamiltonian.

    Raises:
        StepSizeUnderflow: if the integrator cannot advance
    """
    span = req.t1 - req.t0
    if span == 0:
        return IDENTITY.astype(complex)
    count = max(1, int(math.ceil(abs(span) / get_settings().oracle_segment)))
    cuts = np.linspace(req.t0, req.t1, count + 1)
    total = IDENTITY.astype(complex)
    evaluations = 0
    for start, stop in zip(cuts[:-1], cuts[1:]):
        step, nfev = _segment(req, start, stop)
        total = _project(step @ total)
        evaluations += nfev
    logger.debug("Propagated [%g, %g] in %d segments, %d evaluations", req.t0, req.t1, count, evaluations)
    return total


def propagate_with_error(req: PropagatorRequest) -> Tuple[np.ndarray, float]:
    """Propagator and an error estimate from a second run at a sixteen times tighter tolerance."""
    u = propagate(req)
    reference = propagate(req.copy(update={"tolerance": max(req.tolerance / 16, 1e-13)}))
    return reference, frobenius_distance(u, reference)


def spec_propagator(spec: DriveSpec, t1: float, t0: float = 0.0, tolerance: float = None) -> np.ndarray:
    return propagate(PropagatorRequest(hamiltonian=physical_hamiltonian(spec), t0=t0, t1=t1, tolerance=tolerance))


def _as_spec(pt) -> DriveSpec:
    return pt.drive_spec() if hasattr(pt, "drive_spec") else pt


def quasienergy_numeric(pt, tolerance: float = None) -> QuasienergyResult:
    """Quasienergy ``theta(T) / T`` from the principal logarithm of the one-period propagator.

    Args:
        pt: a periodic :class:`DriveSpec`, or any point offering ``drive_spec()``
        tolerance: oracle tolerance

    Raises:
        NonPeriodicDrive: for aperiodic drives
    """
    spec = _as_spec(pt)
    spec.require_periodic()
    u = spec_propagator(spec, spec.period, tolerance=tolerance)
    raw = principal_log(u).theta * (1.0 / spec.period)
    return QuasienergyResult(
        epsilon=bz_fold(raw),
        folds=fold_count(raw),
        method=MagnusMethod(kind=MethodKind.ORACLE),
    )


def gp_sine(pt, parity: ParityOp = None, tolerance: float = None) -> float:
    """Signed ``(n . n_P) sin(theta)`` of ``U(T/2)``; smooth in the drive parameters, zero at centre crossings."""
    spec = _as_spec(pt)
    spec.require_periodic()
    u_half = spec_propagator(spec, 0.5 * spec.period, tolerance=tolerance)
    return gp_sine_of(u_half, parity or ParityOp.sigma_z())
