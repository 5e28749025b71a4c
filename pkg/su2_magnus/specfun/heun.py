"""Local power-series solutions of the confluent Heun equation.

The equation is taken in the non-symmetric form

    z(z-1) y'' + [(1-m)(z-1) + (1-mu1) z - a z(z-1)] y' + (b1 z + b0) y = 0,

with ``m = mu0`` when ``Re mu0 >= 0`` and ``m = -mu0`` otherwise, so its exponents at ``z = 0`` are ``0`` and
``m``. ``heun_c`` returns the local solution normalized to one at the origin: exponent ``0`` for
``Re mu0 >= 0`` and exponent ``m`` (the factor ``z^m`` included) for ``Re mu0 < 0``, so the pair
``(+mu0, -mu0)`` spans the local solution space.
"""
import logging
import math
from typing import Tuple

from pydantic import BaseModel, validator

from su2_magnus.exceptions import SeriesNotConverged
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)


class HeunParams(BaseModel):
    mu0: complex
    mu1: complex
    b0: complex
    b1: complex
    a: complex
    z: float

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @validator("mu0", "mu1", "b0", "b1", "a", pre=True)
    def coerce_complex(cls, v):
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError("Heun parameters must be finite")
        return v

    @validator("z")
    def check_inside_disc(cls, v):
        if not 0.0 < v < 1.0:
            raise ValueError(f"The local series is evaluated for 0 < z < 1, got z={v}")
        return v

    @property
    def m(self) -> complex:
        return self.mu0 if self.mu0.real >= 0 else -self.mu0

    @property
    def exponent(self) -> complex:
        return 0j if self.mu0.real >= 0 else self.m


def heun_local_pair(p: HeunParams, tol: float = None, max_terms: int = None) -> Tuple[complex, complex]:
    """Value and z-derivative of the local solution at ``p.z``.

    Args:
        p: equation parameters and evaluation point
        tol: stop once two successive terms are below ``tol`` relative to the partial sums
        max_terms: series length after which the evaluation gives up

    Raises:
        SeriesNotConverged: if the partial sums do not settle within ``max_terms`` terms
    """
    settings = get_settings()
    tol = tol or settings.heun_tolerance
    max_terms = max_terms or settings.heun_max_terms

    gamma = 1.0 - p.m
    delta = 1.0 - p.mu1
    rho = p.exponent
    z = p.z

    c_prev, c_curr = 0j, 1 + 0j
    z_pow = 1.0
    value = c_curr
    derivative = c_curr * rho / z
    small_terms = 0
    for n in range(max_terms):
        k = n + rho
        c_next = (
            (k * (k - 1) + (gamma + delta + p.a) * k + p.b0) * c_curr + (-p.a * (k - 1) + p.b1) * c_prev
        ) / ((k + 1) * (k + gamma))
        z_pow *= z
        term = c_next * z_pow
        d_term = c_next * (k + 1) * z_pow / z
        value += term
        derivative += d_term
        c_prev, c_curr = c_curr, c_next
        if abs(term) <= tol * max(1.0, abs(value)) and abs(d_term) <= tol * max(1.0, abs(derivative)):
            small_terms += 1
            if small_terms >= 2 and n >= 2:
                logger.debug("Heun series converged after %d terms", n + 1)
                break
        else:
            small_terms = 0
    else:
        raise SeriesNotConverged(f"Confluent Heun series did not converge within {max_terms} terms at z={z}")

    if rho:
        prefactor = z**rho
        # d/dz [z^rho S] with the rho/z part already in ``derivative``
        return value * prefactor, derivative * prefactor
    return value, derivative


def heun_c(p: HeunParams, tol: float = None, max_terms: int = None) -> complex:
    """Value of the local confluent Heun solution selected by the sign of ``Re mu0``."""
    value, _ = heun_local_pair(p, tol=tol, max_terms=max_terms)
    return value
