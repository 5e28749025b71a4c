"""Semiclassical Rabi problem ``H = (Delta/2) sigma_z + (g/2) f~(t) sigma_x`` with ``f~ = cos t`` or ``sin t``.

Quasienergies come from three independent routes: the Magnus expansion in one of the three
pictures, the exact confluent Heun representation, and the reference integrator.
"""
import cmath
import logging
import math
from typing import Tuple

from pydantic import BaseModel, validator

from su2_magnus.constants import Crossing, DriveShape, MethodKind, PeriodMode, PictureKind
from su2_magnus.floquet import (
    MagnusMethod,
    ParityOp,
    QuasienergyResult,
    bz_fold,
    clamp_unit,
    eps_adiabatic,
    eps_full_composed,
    eps_full_region1,
    eps_half_composed,
    eps_half_region1,
    eps_half_region2,
    fold_count,
    locate_exact_crossing,
    sinc,
)
from su2_magnus.magnus import convergence_margin, recursive_magnus
from su2_magnus.oracle import gp_sine, quasienergy_numeric
from su2_magnus.pictures import DriveSpec, PictureContext, build_picture, build_region2, dynamical_phase
from su2_magnus.reports import CheckResult, SymmetryReport
from su2_magnus.settings import get_settings
from su2_magnus.specfun import HeunParams, bessel_j0, heun_c, struve_h0
from su2_magnus.su2 import AngleAxis, magnus_rotation

logger = logging.getLogger(__name__)

RABI_SHAPES = (DriveShape.COS, DriveShape.SIN)


class RabiPoint(BaseModel):
    """A point ``(Delta, g)`` of the Rabi problem in units of the drive frequency.

    Negative parameters are folded back through ``eps(Delta, g) = eps(Delta, -g) = -eps(-Delta, g)``
    by :meth:`canonical`.
    """

    delta: float
    g: float
    shape: DriveShape = DriveShape.COS

    class Config:
        frozen = True

    @validator("delta", "g")
    def non_negative(cls, v):
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"Rabi parameters must be finite and non-negative, got {v}")
        return v

    @validator("shape")
    def periodic_shape(cls, v):
        if v not in RABI_SHAPES:
            raise ValueError(f"The Rabi problem is driven by cos or sin, got {v.value}")
        return v

    @classmethod
    def canonical(cls, delta: float, g: float, shape: DriveShape = DriveShape.COS) -> Tuple["RabiPoint", int]:
        """Canonical point and the sign its quasienergy picks up."""
        return cls(delta=abs(delta), g=abs(g), shape=shape), (-1 if delta < 0 else 1)

    def drive_spec(self) -> DriveSpec:
        return DriveSpec(delta=self.delta, g=self.g, shape=self.shape)


def region2_first_order(delta: float, g: float) -> complex:
    """``A_1(pi)`` of the small-splitting picture for the cosine drive, ``(Delta pi / 2)[J0(g) + i H0(g)]``."""
    return 0.5 * delta * math.pi * complex(bessel_j0(g), struve_h0(g))


def _with_certificate(result: QuasienergyResult, margin: float) -> QuasienergyResult:
    return result.copy(update={"margin": margin, "certified": margin < math.pi})


def _certificate_drive(spec: DriveSpec, method: MagnusMethod, ctx: PictureContext):
    # interaction pictures: the half-period formulas rebuild U(2 pi), so the bound runs over the whole period
    if method.period == PeriodMode.FULL or method.picture == PictureKind.ADIABATIC:
        return ctx.drive
    return build_picture(spec, method.picture, window=(0.0, 2 * math.pi)).drive


def _magnus_quasienergy(pt: RabiPoint, method: MagnusMethod) -> QuasienergyResult:
    spec = pt.drive_spec()
    span = math.pi if method.period == PeriodMode.HALF else 2 * math.pi
    if method.picture == PictureKind.ADIABATIC and method.order == 0:
        phi = dynamical_phase(spec)(math.pi)
        return eps_adiabatic(float(phi), 0.0, 0.0, method=method)

    ctx = build_picture(spec, method.picture, window=(0.0, span))
    margin = convergence_margin(_certificate_drive(spec, method, ctx)).margin
    if method.order == 0:
        A, C = 0j, 0.0
    else:
        mc = recursive_magnus(ctx.drive, method.order)
        A, C = mc.A_total, mc.C_total
    picture = magnus_rotation(A, C)
    theta = picture.theta

    if method.picture == PictureKind.REGION_I:
        if method.period == PeriodMode.HALF:
            result = eps_half_region1(theta, C, pt.delta, method=method)
        else:
            result = eps_full_region1(theta, C, pt.delta, method=method)
    elif method.picture == PictureKind.REGION_II:
        if method.period == PeriodMode.FULL:
            result = eps_full_composed(ctx.frame(span), picture, method=method)
        elif pt.shape == DriveShape.COS:
            result = eps_half_region2(A, theta, method=method)
        else:
            result = eps_half_composed(ctx.frame(span), picture, ParityOp.sigma_x(), method=method)
    else:
        if method.period == PeriodMode.HALF:
            phi = float(ctx.adiabatic.phi(math.pi))
            result = eps_adiabatic(phi, theta, C, method=method)
        else:
            # U(2 pi) = Psi(0) Phi(2 pi) U_a Psi(0)^dagger has the trace of Phi(2 pi) U_a
            phase = AngleAxis.from_rotation(float(ctx.adiabatic.phi(span)), (0.0, 0.0, 1.0))
            result = eps_full_composed(phase, picture, method=method)
    return _with_certificate(result, margin)


def _bessel_quasienergy(pt: RabiPoint) -> QuasienergyResult:
    A = region2_first_order(pt.delta, pt.g)
    argument = A.real * sinc(abs(A))
    raw = math.asin(clamp_unit(argument, "sin(pi eps)")) / math.pi
    return QuasienergyResult(epsilon=bz_fold(raw), folds=fold_count(raw), method=MagnusMethod(kind=MethodKind.BESSEL))


def rabi_quasienergy(pt: RabiPoint, method: MagnusMethod) -> QuasienergyResult:
    """Quasienergy of ``pt`` by the requested method.

    Out-of-region use of a picture is allowed; the convergence certificate attached to the result
    tells whether the Magnus series is guaranteed to converge.
    """
    if method.kind == MethodKind.ORACLE:
        return quasienergy_numeric(pt)
    if method.kind == MethodKind.HEUN:
        return rabi_exact_heun(pt)
    if method.kind == MethodKind.BESSEL:
        return _bessel_quasienergy(pt)
    if method.kind == MethodKind.ZMA:
        zeroth = MagnusMethod(kind=MethodKind.MAGNUS, picture=PictureKind.ADIABATIC, order=0, period=PeriodMode.HALF)
        return _magnus_quasienergy(pt, zeroth).copy(update={"method": method})
    return _magnus_quasienergy(pt, method)


def heun_values(pt: RabiPoint) -> Tuple[complex, complex]:
    """Local Heun solutions ``eta+`` and ``eta-`` of the cosine drive at ``z = 1/2``.

    With ``u = c1 + c2 = exp(-i (g/2) sin t) y`` and ``z = (1 + sin t) / 2`` the Schroedinger equation becomes a
    confluent Heun equation with ``mu0 = mu1 = 1/2``, ``a = 2ig``, ``b0 = -Delta^2 / 4`` and ``b1 = 0``.
    ``eta-`` carries its factor ``z^(1/2)``.
    """
    settings = get_settings()

    def local(mu0: float) -> complex:
        params = HeunParams(mu0=mu0, mu1=0.5, b0=-0.25 * pt.delta**2, b1=0.0, a=2j * pt.g, z=0.5)
        return heun_c(params, tol=settings.heun_tolerance, max_terms=settings.heun_max_terms)

    return local(0.5), local(-0.5)


def rabi_exact_heun(pt: RabiPoint) -> QuasienergyResult:
    """Exact signed quasienergy of the cosine drive, ``sin(pi eps) = 2 Delta Re[exp(-ig) eta+ eta-]``.

    The half-period propagator from ``t = -pi/2`` to ``pi/2`` is the transpose of its first half times that half,
    which puts ``sin(pi eps)`` on the values at ``t = 0`` alone. The sine drive is the cosine drive shifted in
    time and has the same quasienergy.

    Raises:
        SeriesNotConverged: if a Heun series does not converge at ``z = 1/2``
    """
    eta_plus, eta_minus = heun_values(pt)
    sine = 2.0 * pt.delta * (cmath.exp(-1j * pt.g) * eta_plus * eta_minus).real
    logger.debug("Heun values at Delta=%g, g=%g: eta+=%s, eta-=%s", pt.delta, pt.g, eta_plus, eta_minus)
    raw = math.asin(clamp_unit(sine, "sin(pi eps)")) / math.pi
    return QuasienergyResult(epsilon=bz_fold(raw), folds=fold_count(raw), method=MagnusMethod(kind=MethodKind.HEUN))


def rabi_symmetry_check(pt: RabiPoint, order: int = 3) -> SymmetryReport:
    """Symmetries of the Rabi problem: evenness in ``g``, oddness in ``Delta`` and ``C_n(pi) = 0``.

    The parameter relations are checked on the signed parity sine of the reference propagator. The
    vanishing ``C_n(pi)`` belongs to the cosine drive in the small-splitting picture; for the sine drive
    the coefficients are reported without a verdict.
    """
    settings = get_settings()
    threshold = settings.symmetry_tolerance
    spec = pt.drive_spec()
    report = SymmetryReport(title=f"Rabi {pt.shape.value} drive, Delta={pt.delta}, g={pt.g}")

    sine = gp_sine(spec)
    even = abs(sine - gp_sine(spec.with_parameters(g=-pt.g)))
    odd = abs(sine + gp_sine(spec.with_parameters(delta=-pt.delta)))
    report.checks.append(CheckResult.below("eps(Delta, g) = eps(Delta, -g)", even, threshold))
    report.checks.append(CheckResult.below("eps(Delta, g) = -eps(-Delta, g)", odd, threshold))

    ctx = build_region2(spec, window=(0.0, math.pi))
    mc = recursive_magnus(ctx.drive, order)
    largest = max(abs(c) for c in mc.C)
    if pt.shape == DriveShape.COS:
        report.checks.append(CheckResult.below(f"max |C_n(pi)|, n <= {order}", largest, 1e-8))
    else:
        report.checks.append(
            CheckResult.informational(f"max |C_n(pi)|, n <= {order}", largest, 1e-8, "(sine drive)")
        )
    return report


def refine_exact_crossing(g: float, lo: float, hi: float, tol: float = None) -> float:
    """Splitting ``Delta`` in ``[lo, hi]`` at which the quasienergy of the cosine drive vanishes exactly."""
    return locate_exact_crossing(lambda delta: gp_sine(RabiPoint(delta=delta, g=g)), lo, hi, tol=tol)


def annotate_crossing(result: QuasienergyResult, tol: float = None) -> QuasienergyResult:
    """Mark a result whose quasienergy sits on a zone centre or boundary."""
    tol = get_settings().crossing_tolerance if tol is None else tol
    if abs(result.epsilon) < tol:
        return result.copy(update={"crossing": Crossing.EXACT_CENTER})
    if 0.5 - abs(result.epsilon) < tol:
        return result.copy(update={"crossing": Crossing.EXACT_BOUNDARY})
    return result

