"""Picture transformations that turn the physical Hamiltonian into a purely off-diagonal drive.

Every picture factorizes the physical propagator as ``U(t, t0) = U0(t) U_pic(t, t0) U0(t0)^dagger``
with ``U_pic`` generated by ``v sigma+ + v* sigma-``:

    region I    U0 = exp(-i (Delta t / 2) sigma_z)                 v = (g/2) f~ exp(+i Delta t)
    region II   U0 = exp(-i (g F~ / 2) sigma_z), Hadamard swapped   v = (Delta/2) exp(i g F~)
    adiabatic   U0 = Psi(t) Phi(t), real-gauge eigenvectors        v = i (chi'/2) exp(2 i phi)
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel
from scipy import integrate

from su2_magnus.constants import DriveShape, PictureKind, Region, Smoothness
from su2_magnus.exceptions import ParameterOutOfRange, QuadratureFailure
from su2_magnus.magnus import ScalarDrive
from su2_magnus.pictures.drive_spec import DriveSpec
from su2_magnus.settings import get_settings
from su2_magnus.specfun import incomplete_elliptic_e
from su2_magnus.su2 import HADAMARD, AngleAxis, MagnusCoefficients, compose_bch, to_matrix

logger = logging.getLogger(__name__)

Z_AXIS = (0.0, 0.0, 1.0)
Y_AXIS = (0.0, 1.0, 0.0)

Window = Optional[Tuple[float, float]]


class AdiabaticFrame(BaseModel):
    """Mixing angle ``chi = arctan(f / Delta)``, its rate and the dynamical phase with ``phi(t0) = 0``."""

    chi: Callable
    chi_dot: Callable
    phi: Callable
    t0: float

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class PictureContext(BaseModel):
    kind: PictureKind
    drive: ScalarDrive
    frame: Callable[[float], AngleAxis]
    swapped: bool = False
    spec: DriveSpec
    adiabatic: Optional[AdiabaticFrame] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    def restricted(self, t0: float = None, t1: float = None) -> "PictureContext":
        return self.copy(update={"drive": self.drive.restricted(t0=t0, t1=t1)})


def classify_region(spec: DriveSpec) -> Region:
    """Parameter region whose perturbative picture applies to a periodic drive.

    When both ``g`` and ``Delta`` are below one the smaller of the two perturbations wins.

    Raises:
        NonPeriodicDrive: for linear, bell-shaped or aperiodic sampled drives
    """
    spec.require_periodic()
    g, delta = abs(spec.g), abs(spec.delta)
    if g < 1 and delta < 1:
        return Region.R1 if g <= delta else Region.R2
    if g < 1:
        return Region.R1
    if delta < 1:
        return Region.R2
    return Region.R3


def _window(spec: DriveSpec, window: Window) -> Tuple[float, float]:
    if window is not None:
        return float(window[0]), float(window[1])
    if not spec.is_periodic:
        raise ParameterOutOfRange(f"A {spec.shape.value} drive needs an explicit time window")
    return 0.0, float(spec.period)


def _smoothness(spec: DriveSpec) -> Smoothness:
    return Smoothness.SAMPLED if spec.shape == DriveShape.SAMPLED else Smoothness.ANALYTIC


def build_region1(spec: DriveSpec, window: Window = None) -> PictureContext:
    """Weak-drive interaction picture with respect to the static splitting."""
    t0, t1 = _window(spec, window)
    delta, g = spec.delta, spec.g

    def v(t):
        t = np.asarray(t, dtype=float)
        return 0.5 * g * spec.shape_value(t) * np.exp(1j * delta * t)

    rate = None if spec.shape == DriveShape.SAMPLED else (lambda t: abs(delta) + 1.0 + 0.0 * np.asarray(t))
    drive = ScalarDrive(v=v, t0=t0, t1=t1, smoothness=_smoothness(spec), variation_rate=rate)
    return PictureContext(
        kind=PictureKind.REGION_I,
        drive=drive,
        frame=lambda t: AngleAxis.from_rotation(0.5 * delta * t, Z_AXIS),
        spec=spec,
    )


def build_region2(spec: DriveSpec, window: Window = None) -> PictureContext:
    """Small-splitting picture, built in the Hadamard-swapped frame where the drive is diagonal."""
    t0, t1 = _window(spec, window)
    delta, g = spec.delta, spec.g

    def v(t):
        return 0.5 * delta * np.exp(1j * g * spec.shape_integral(t))

    def rate(t):
        return np.abs(g * spec.shape_value(t)) + 1.0

    drive = ScalarDrive(v=v, t0=t0, t1=t1, smoothness=_smoothness(spec), variation_rate=rate)
    return PictureContext(
        kind=PictureKind.REGION_II,
        drive=drive,
        frame=lambda t: AngleAxis.from_rotation(0.5 * g * float(spec.shape_integral(t)), Z_AXIS),
        swapped=True,
        spec=spec,
    )


def dynamical_phase(spec: DriveSpec, t0: float = 0.0) -> Callable:
    """``phi(t) = (1/2) int_{t0}^t sqrt(Delta^2 + f^2)``.

    Closed forms for the cosine and sine drives (incomplete elliptic integrals) and the linear sweep,
    adaptive vector quadrature otherwise.
    """
    delta, g = abs(spec.delta), abs(spec.g)
    m = math.hypot(delta, g)
    if spec.shape in (DriveShape.COS, DriveShape.SIN) and m > 0:
        k = (g / m) ** 2
        shift = 0.0 if spec.shape == DriveShape.COS else 0.5 * math.pi

        def primitive(t):
            return 0.5 * m * incomplete_elliptic_e(np.asarray(t, dtype=float) + shift, k)

    elif spec.shape == DriveShape.LINEAR and g > 0 and delta > 0:

        def primitive(t):
            x = g * np.asarray(t, dtype=float) / delta
            return delta**2 / (4 * g) * (x * np.sqrt(1 + x**2) + np.arcsinh(x))

    else:
        return _phase_by_quadrature(spec, t0)

    origin = primitive(t0)
    return lambda t: primitive(t) - origin


def _phase_by_quadrature(spec: DriveSpec, t0: float) -> Callable:
    settings = get_settings()

    def energy(t):
        return 0.5 * np.sqrt(spec.delta**2 + spec.f(t) ** 2)

    def phi(t):
        t = np.asarray(t, dtype=float)
        span = t - t0
        value, error = integrate.quad_vec(
            lambda u: span * energy(t0 + u * span), 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=settings.quad_limit
        )
        if error > 1e-8 * max(1.0, float(np.max(np.abs(value), initial=0.0))):
            raise QuadratureFailure(f"Dynamical phase quadrature unreliable, error estimate {error:.2e}")
        return value

    return phi


def build_adiabatic(spec: DriveSpec, t0: float = 0.0, window: Window = None) -> Tuple[PictureContext, AdiabaticFrame]:
    """Adiabatic picture in the real gauge, with the dynamical phase measured from ``t0``.

    Raises:
        ParameterOutOfRange: unless ``Delta > 0``, which keeps ``chi`` inside (-pi/2, pi/2)
        QuadratureFailure: if the dynamical phase cannot be integrated
    """
    if spec.delta <= 0:
        raise ParameterOutOfRange(f"The adiabatic picture needs Delta > 0, got {spec.delta}")
    start, stop = _window(spec, window)
    delta = spec.delta

    def chi(t):
        return np.arctan(spec.f(t) / delta)

    def chi_dot(t):
        f = spec.f(t)
        return delta * spec.f_dot(t) / (delta**2 + f**2)

    phi = dynamical_phase(spec, t0)
    frame = AdiabaticFrame(chi=chi, chi_dot=chi_dot, phi=phi, t0=t0)

    def v(t):
        t = np.asarray(t, dtype=float)
        return 0.5j * chi_dot(t) * np.exp(2j * phi(t))

    def rate(t):
        return np.sqrt(delta**2 + spec.f(t) ** 2) + np.abs(spec.f_dot(t)) / delta + 1.0

    def transform(t: float) -> AngleAxis:
        psi = AngleAxis.from_rotation(0.5 * float(chi(t)), Y_AXIS)
        return compose_bch(psi, AngleAxis.from_rotation(float(phi(t)), Z_AXIS))

    drive = ScalarDrive(v=v, t0=start, t1=stop, smoothness=_smoothness(spec), variation_rate=rate)
    context = PictureContext(
        kind=PictureKind.ADIABATIC, drive=drive, frame=transform, spec=spec, adiabatic=frame
    )
    return context, frame


def build_picture(spec: DriveSpec, kind: PictureKind, window: Window = None) -> PictureContext:
    if kind == PictureKind.REGION_I:
        return build_region1(spec, window)
    if kind == PictureKind.REGION_II:
        return build_region2(spec, window)
    return build_adiabatic(spec, window=window)[0]


def physical_propagator(ctx: PictureContext, u_picture: np.ndarray, t: float, t_start: float) -> np.ndarray:
    """Transport a picture propagator ``U_pic(t, t_start)`` back to the laboratory frame."""
    u = to_matrix(ctx.frame(t)) @ np.asarray(u_picture) @ to_matrix(ctx.frame(t_start)).conj().T
    if ctx.swapped:
        u = HADAMARD @ u @ HADAMARD
    return u


def amplitudes_from_magnus(mc: MagnusCoefficients) -> Tuple[complex, complex]:
    """Amplitudes ``alpha = <+|U|+>`` and ``beta = <-|U|+>`` of ``exp(-i Omega)``.

    The transition probability is ``|beta|^2``.
    """
    return _amplitudes(mc.A_total, mc.C_total)


def _amplitudes(A: complex, C: float) -> Tuple[complex, complex]:
    theta = math.sqrt(abs(A) ** 2 + C**2)
    sinc = float(np.sinc(theta / math.pi))
    alpha = complex(math.cos(theta), -C * sinc)
    beta = -1j * np.conj(A) * sinc
    return alpha, complex(beta)


def amplitudes_first_order(A1: complex) -> Tuple[complex, complex]:
    """First-order amplitudes ``alpha = cos|A1|`` and ``beta = -i sin|A1| A1* / |A1|``."""
    return _amplitudes(A1, 0.0)
