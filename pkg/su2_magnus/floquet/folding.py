import logging
import math

import numpy as np

from su2_magnus.exceptions import DomainError
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)


def fold_count(raw: float) -> int:
    """Number of Brillouin zones ``raw`` was shifted by in :func:`bz_fold`."""
    return int(math.floor(raw + 0.5))


def bz_fold(raw: float) -> float:
    """Reduce a quasienergy (units of omega) into ``[-1/2, 1/2)``."""
    folded = raw - math.floor(raw + 0.5)
    if folded >= 0.5 or folded < -0.5:
        folded = -0.5
    return folded


def quasienergy_distance(e1: float, e2: float) -> float:
    """Distance between two quasienergies that is blind to the ``+eps`` / ``-eps`` branch choice."""
    return min(abs(bz_fold(e1 - e2)), abs(bz_fold(e1 + e2)))


def sinc(theta: float) -> float:
    """``sin(theta) / theta`` with ``sinc(0) = 1``."""
    return float(np.sinc(theta / math.pi))


def clamp_unit(value: float, name: str = "argument") -> float:
    """Clamp an arcsin/arccos argument back into [-1, 1] if it overshoots by quadrature noise only.

    Raises:
        DomainError: if the overshoot exceeds the clamp tolerance
    """
    excess = abs(value) - 1.0
    if excess <= 0:
        return value
    tolerance = get_settings().clamp_tolerance
    if excess > tolerance:
        raise DomainError(f"{name} = {value:.12f} lies outside [-1, 1] beyond the clamp tolerance {tolerance:.1e}")
    logger.warning("Clamped %s = %.12f into [-1, 1]", name, value)
    return math.copysign(1.0, value)
