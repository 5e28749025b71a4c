"""Thin ``scipy.special`` wrappers with the conventions the closed forms rely on."""
import math

import numpy as np
from scipy import special

from su2_magnus.exceptions import ParameterOutOfRange


def _real(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def bessel_j0(x):
    return _real(special.j0(x))


def struve_h0(x):
    return _real(special.struve(0, x))


def incomplete_elliptic_e(phi, m_param: float):
    """``E(phi | m)`` in the parameter convention ``m = k^2``, for ``m`` in [0, 1].

    Raises:
        ParameterOutOfRange: for ``m_param`` outside [0, 1] or a non-finite ``phi``
    """
    if not 0.0 <= m_param <= 1.0 or not np.all(np.isfinite(phi)):
        raise ParameterOutOfRange(f"E(phi | m) needs finite phi and m in [0, 1], got phi={phi}, m={m_param}")
    return _real(special.ellipeinc(phi, m_param))


def gamma_arg_one_minus_i(gamma: float) -> float:
    """Continuous argument of ``Gamma(1 - i gamma)``."""
    if not math.isfinite(gamma):
        raise ParameterOutOfRange(f"gamma must be finite, got {gamma}")
    # loggamma stays on the continuous branch, no 2 pi jumps at large gamma
    return float(np.imag(special.loggamma(1.0 - 1j * gamma)))
