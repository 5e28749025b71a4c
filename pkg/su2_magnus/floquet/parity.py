"""Generalized parity: drives with ``f(t + T/2) = -f(t)`` admit an operator ``P = n_P . sigma`` with

    U(T) = [P U(T/2)]^2,    tr[P U(T/2)] = -2i (n . n_P) sin(theta),    sin(pi eps) = (n . n_P) sin(theta)

so the quasienergy follows from the half-period propagator without losing the symmetry.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, validator

from su2_magnus.constants import Crossing
from su2_magnus.exceptions import GPViolation
from su2_magnus.floquet.folding import clamp_unit
from su2_magnus.settings import get_settings
from su2_magnus.su2 import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, frobenius_distance, principal_log

logger = logging.getLogger(__name__)


class ParityOp(BaseModel):
    n_P: Tuple[float, float, float]

    class Config:
        frozen = True

    @validator("n_P")
    def unit_vector(cls, v):
        norm = math.sqrt(sum(c * c for c in v))
        if norm == 0:
            raise ValueError("Parity axis must be non-zero")
        return tuple(c / norm for c in v)

    @classmethod
    def sigma_x(cls) -> "ParityOp":
        return cls(n_P=(1.0, 0.0, 0.0))

    @classmethod
    def sigma_z(cls) -> "ParityOp":
        return cls(n_P=(0.0, 0.0, 1.0))

    def matrix(self) -> np.ndarray:
        x, y, z = self.n_P
        return x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z


def gp_sine_of(u_half: np.ndarray, p: ParityOp) -> float:
    """Signed ``(n . n_P) sin(theta)`` of a half-period propagator."""
    return float(np.dot(principal_log(u_half).sin_axis(), p.n_P))


def eps_from_gp_trace(u_half: np.ndarray, p: ParityOp) -> float:
    """Quasienergy ``(1/pi) arcsin[(n . n_P) sin(theta)]`` of a GP-symmetric drive.

    Raises:
        GPViolation: if the trace identity of ``P U(T/2)`` is not met
    """
    u_half = np.asarray(u_half, dtype=complex)
    sine = gp_sine_of(u_half, p)
    residual = abs(np.trace(p.matrix() @ u_half) + 2j * sine)
    tolerance = get_settings().gp_violation_tolerance
    if residual > tolerance:
        raise GPViolation(f"|tr[P U] + 2i (n.n_P) sin(theta)| = {residual:.2e} exceeds {tolerance:.1e}")
    return math.asin(clamp_unit(sine, "(n.n_P) sin(theta)")) / math.pi


def gp_identity_check(u_half: np.ndarray, u_full: np.ndarray, p: ParityOp) -> float:
    """Frobenius distance ``|U(T) - (P U(T/2))^2|``."""
    pu = p.matrix() @ np.asarray(u_half, dtype=complex)
    return frobenius_distance(u_full, pu @ pu)


def classify_crossing(u_full: np.ndarray, tol: Optional[float] = None) -> Crossing:
    tol = get_settings().crossing_tolerance if tol is None else tol
    if frobenius_distance(u_full, IDENTITY) < tol:
        return Crossing.EXACT_CENTER
    if frobenius_distance(u_full, -IDENTITY) < tol:
        return Crossing.EXACT_BOUNDARY
    return Crossing.NONE
