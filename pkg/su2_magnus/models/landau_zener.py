"""Landau-Zener-Stueckelberg-Majorana sweep ``f = v t`` in the adiabatic picture.

In the dimensionless time ``x = v t / Delta`` the adiabatic drive is ``i exp(2 i gamma g(x)) / (2 (1 + x^2))``
with ``gamma = Delta^2 / (4 v)`` and ``g(x) = x sqrt(1 + x^2) + asinh(x)``. The substitution ``x = sinh(s)``
turns this into

    v(s) = i exp(i gamma (sinh 2s + 2s)) / (2 cosh s),

whose modulus decays exponentially, so the infinite sweep is truncated to a symmetric window ``[-S, S]``
with an explicit tail bound. The phase origin sits at ``x = 0``, which keeps the PT symmetry of the
sweep visible as ``Re A_n(infinity) = 0``.
"""
import logging
import math
import warnings
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, validator
from scipy import integrate, optimize

from su2_magnus.exceptions import QuadratureFailure
from su2_magnus.magnus import (
    ScalarDrive,
    closed_form_a3,
    closed_form_c2,
    magnus_history,
    recursive_magnus,
)
from su2_magnus.pictures import amplitudes_from_magnus
from su2_magnus.reports import CheckResult, SymmetryReport
from su2_magnus.settings import get_settings
from su2_magnus.specfun import gamma_arg_one_minus_i
from su2_magnus.su2 import MagnusCoefficients

logger = logging.getLogger(__name__)

QUAD_TOLERANCE = 1e-8


class LzParams(BaseModel):
    """Adiabaticity ``gamma = Delta^2 / (4 v)``; ``gamma = 0`` is the sudden limit."""

    gamma: float

    class Config:
        frozen = True

    @validator("gamma")
    def non_negative(cls, v):
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"gamma must be finite and non-negative, got {v}")
        return v

    @staticmethod
    def aux_g(x):
        """``x sqrt(1 + x^2) + asinh(x)``, twice the dynamical phase per ``gamma``."""
        x = np.asarray(x, dtype=float)
        return x * np.sqrt(1 + x**2) + np.arcsinh(x)

    def window(self, tol: float = None) -> float:
        """Half-width ``S`` in ``s`` beyond which the neglected coupling stays below ``tol``."""
        tol = tol or get_settings().lz_tail_tolerance
        half_width = math.log(2.0 / tol)
        if self.gamma > 0:
            # the oscillating tail is further suppressed by the phase rate 4 gamma cosh^2 s
            half_width = min(half_width, math.log(1.0 / (self.gamma * tol)) / 3.0)
        return max(half_width, 1.0)

    def drive(self, tol: float = None, phase_origin: float = 0.0) -> ScalarDrive:
        """Adiabatic-picture drive in ``s``, the dynamical phase measured from ``x = phase_origin``."""
        gamma = self.gamma
        s0 = math.asinh(phase_origin)
        offset = gamma * (math.sinh(2 * s0) + 2 * s0)
        half_width = self.window(tol)

        def v(s):
            s = np.asarray(s, dtype=float)
            return 0.5j * np.exp(1j * (gamma * (np.sinh(2 * s) + 2 * s) - offset)) / np.cosh(s)

        def rate(s):
            return 4 * gamma * np.cosh(s) ** 2 + 1.0

        return ScalarDrive(v=v, t0=-half_width, t1=half_width, variation_rate=rate)


def lz_exact(p: LzParams) -> Tuple[float, float]:
    """Exact transition probability ``exp(-2 pi gamma)`` and Stokes phase."""
    gamma = p.gamma
    probability = math.exp(-2 * math.pi * gamma)
    if gamma == 0:
        return probability, math.pi / 4
    stokes = math.pi / 4 + gamma * (math.log(gamma) - 1) + gamma_arg_one_minus_i(gamma)
    return probability, stokes


def _inverse_phase(w: float, gamma: float) -> float:
    # solves gamma (sinh 2s + 2s) = w for s >= 0
    y = w / gamma
    return optimize.brentq(lambda s: math.sinh(2 * s) + 2 * s - y, 0.0, 0.5 * math.asinh(y) + 1e-9, xtol=1e-15)


def lz_J(gamma: float) -> float:
    """``J(gamma) = int_0^inf cos[gamma (sinh 2s + 2s)] / cosh(s) ds``, so that ``A_1(infinity) = i J``.

    With ``w = gamma (sinh 2s + 2s)`` the integral becomes a Fourier integral of ``sech^3(s(w)) / (4 gamma)``,
    integrated adaptively over the first cycle and with a Fourier-weighted rule beyond.

    Raises:
        QuadratureFailure: if the error estimate exceeds 1e-8
    """
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if gamma == 0:
        return math.pi / 2

    def amplitude(w: float) -> float:
        if w == 0:
            return 1.0 / (4 * gamma)
        return 1.0 / (4 * gamma * math.cosh(_inverse_phase(w, gamma)) ** 3)

    limit = get_settings().quad_limit
    head_end = 2 * math.pi
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        head, head_error = integrate.quad(
            lambda w: amplitude(w) * math.cos(w), 0.0, head_end, limit=limit, epsabs=1e-12, epsrel=1e-12
        )
        tail, tail_error = integrate.quad(
            amplitude, head_end, np.inf, weight="cos", wvar=1.0, epsabs=1e-11, limlst=100
        )
    error = head_error + tail_error
    if error > QUAD_TOLERANCE:
        raise QuadratureFailure(f"J({gamma}) unreliable, error estimate {error:.2e}")
    logger.debug("J(%g) = %.12f (error %.1e)", gamma, head + tail, error)
    return head + tail


def lz_C2(gamma: float, tol: float = None) -> float:
    """Second-order coefficient ``C_2(infinity)`` of the sweep."""
    if gamma == 0:
        return 0.0
    return closed_form_c2(LzParams(gamma=gamma).drive(), tol=tol)


def lz_coefficients(p: LzParams, order: int) -> MagnusCoefficients:
    """Magnus coefficients at ``t = +infinity``; closed forms up to third order, the recursion beyond."""
    if order > 3:
        return recursive_magnus(p.drive(), order)
    A = [1j * lz_J(p.gamma), 0.0, 0.0][:order]
    C = [0.0, 0.0, 0.0][:order]
    if order >= 2:
        C[1] = lz_C2(p.gamma)
    if order >= 3 and p.gamma > 0:
        A[2] = closed_form_a3(p.drive())
    return MagnusCoefficients(order=order, A=A, C=C, time=math.inf)


def stokes_phase_sma(A1: complex, C2: float) -> float:
    """Stokes phase of the second-order amplitude, ``tan(phi) = (tan(theta) / theta) C2``."""
    theta = math.hypot(abs(A1), C2)
    if theta == 0:
        return 0.0
    return math.atan2(C2 * math.sin(theta) / theta, math.cos(theta))


def lz_magnus(p: LzParams, order: int) -> Tuple[float, Optional[float]]:
    """Transition probability and Stokes phase of the order-``order`` Magnus approximation.

    First order carries no phase information, its Stokes phase is ``None``.
    """
    if order < 1:
        raise ValueError(f"Magnus order must be at least 1, got {order}")
    mc = lz_coefficients(p, order)
    alpha, beta = amplitudes_from_magnus(mc)
    probability = abs(beta) ** 2
    if order == 1:
        return probability, None
    if p.gamma == 0:
        # alpha vanishes in the sudden limit; the phase is its gamma -> 0 limit
        return probability, math.pi / 4
    return probability, -math.atan2(alpha.imag, alpha.real)


def lz_symmetry_report(p: LzParams, order: int, phase_origin: float = 0.0) -> SymmetryReport:
    """PT symmetry of the sweep: every ``A_n(infinity)`` is purely imaginary.

    Moving the phase origin away from ``x = 0`` breaks the identity, which the report shows as a FAIL.
    """
    mc = recursive_magnus(p.drive(phase_origin=phase_origin), order)
    scale = max(1.0, max(abs(a) for a in mc.A))
    worst = max(abs(a.real) for a in mc.A)
    threshold = get_settings().symmetry_tolerance * scale
    report = SymmetryReport(title=f"Landau-Zener gamma={p.gamma}, order {order}, phase origin x={phase_origin}")
    report.checks.append(CheckResult.below("max |Re A_n(infinity)|", worst, threshold))
    return report


def lz_transition_history(gamma: float, order: int, points: int = 201) -> pd.DataFrame:
    """Transition probability ``P(x)`` along the sweep, from the time-resolved Magnus coefficients."""
    p = LzParams(gamma=gamma)
    s, A, C = magnus_history(p.drive(), order)
    keep = np.unique(np.linspace(0, len(s) - 1, points).astype(int))
    probabilities = []
    for k in keep:
        mc = MagnusCoefficients(order=order, A=A[:, k], C=C[:, k], time=float(s[k]))
        probabilities.append(abs(amplitudes_from_magnus(mc)[1]) ** 2)
    return pd.DataFrame({"x": np.sinh(s[keep]), "P": probabilities})
