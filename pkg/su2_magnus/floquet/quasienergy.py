"""Floquet quasienergies (units of omega, period 2 pi) from Magnus coefficients of each picture.

Full-period formulas read ``cos(2 pi eps)`` off ``U(2 pi)`` and lose the generalized parity of the
drive at any finite order; the half-period formulas read ``sin(pi eps)`` off ``P U(pi)`` and keep it.
"""
import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, validator

from su2_magnus.constants import Crossing, MethodKind, PeriodMode, PictureKind
from su2_magnus.exceptions import ParameterOutOfRange
from su2_magnus.floquet.folding import bz_fold, clamp_unit, fold_count, sinc
from su2_magnus.floquet.parity import ParityOp
from su2_magnus.su2 import AngleAxis, compose_bch

logger = logging.getLogger(__name__)


class MagnusMethod(BaseModel):
    """How a quasienergy was obtained, e.g. ``magnus:region1:3:half``, ``oracle`` or ``heun``."""

    kind: MethodKind
    picture: Optional[PictureKind] = None
    order: Optional[int] = None
    period: Optional[PeriodMode] = None

    class Config:
        frozen = True

    @validator("order")
    def positive_order(cls, v):
        if v is not None and v < 0:
            raise ValueError("Magnus order must be non-negative")
        return v

    @classmethod
    def parse(cls, descriptor: str) -> "MagnusMethod":
        """Parse a ``magnus:<picture>:<order>:<half|full>`` descriptor or a bare method name."""
        parts = descriptor.strip().split(":")
        kind = MethodKind(parts[0])
        if kind != MethodKind.MAGNUS:
            if len(parts) != 1:
                raise ValueError(f"Method '{kind.value}' takes no options, got '{descriptor}'")
            return cls(kind=kind)
        if len(parts) != 4:
            raise ValueError(f"Expected magnus:<picture>:<order>:<half|full>, got '{descriptor}'")
        return cls(kind=kind, picture=PictureKind(parts[1]), order=int(parts[2]), period=PeriodMode(parts[3]))

    @property
    def label(self) -> str:
        if self.kind != MethodKind.MAGNUS:
            return self.kind.value
        return f"{self.kind.value}:{self.picture.value}:{self.order}:{self.period.value}"

    @property
    def column(self) -> str:
        """Column name of this method in sweep tables."""
        if self.kind != MethodKind.MAGNUS:
            return f"eps_{self.kind.value}"
        return f"eps_{self.picture.value}_m{self.order}_{self.period.value}"


class QuasienergyResult(BaseModel):
    epsilon: float
    method: MagnusMethod
    crossing: Crossing = Crossing.NONE
    gap: Optional[float] = None
    folds: int = 0
    margin: Optional[float] = None
    certified: Optional[bool] = None

    @validator("epsilon")
    def in_zone(cls, v):
        if not -0.5 <= v < 0.5:
            raise ValueError(f"Quasienergy {v} outside the Brillouin zone [-1/2, 1/2)")
        return v

    def __float__(self):
        return self.epsilon


def _result(raw: float, method: Optional[MagnusMethod]) -> QuasienergyResult:
    return QuasienergyResult(
        epsilon=bz_fold(raw),
        folds=fold_count(raw),
        method=method or MagnusMethod(kind=MethodKind.MAGNUS),
    )


def _check_coefficients(theta: float, C: float):
    if theta < 0 or abs(C) > theta * (1 + 1e-12) + 1e-15:
        raise ParameterOutOfRange(f"Need theta >= |C| >= 0, got theta={theta}, C={C}")


def eps_full_region1(thetaI: float, C_I: float, delta: float, method: MagnusMethod = None) -> QuasienergyResult:
    """Full-period quasienergy in the weak-drive picture.

    Args:
        thetaI: angle of ``U_I(2 pi)``
        C_I: sigma_z coefficient of the generator ``Omega_I(2 pi)``
        delta: level splitting

    Raises:
        DomainError: if the arccos argument leaves [-1, 1] by more than the clamp tolerance
    """
    _check_coefficients(thetaI, C_I)
    argument = math.cos(math.pi * delta) * math.cos(thetaI) - C_I * math.sin(math.pi * delta) * sinc(thetaI)
    raw = math.acos(clamp_unit(argument, "cos(2 pi eps)")) / (2 * math.pi)
    return _result(raw, method)


def eps_half_region1(thetaI: float, C_I: float, delta: float, method: MagnusMethod = None) -> QuasienergyResult:
    """Half-period quasienergy in the weak-drive picture, parity ``sigma_z``; coefficients at ``t = pi``."""
    _check_coefficients(thetaI, C_I)
    half = 0.5 * math.pi * delta
    argument = math.sin(half) * math.cos(thetaI) + C_I * math.cos(half) * sinc(thetaI)
    raw = math.asin(clamp_unit(argument, "sin(pi eps)")) / math.pi
    return _result(raw, method)


def eps_half_region2(A_I: complex, thetaI: float, method: MagnusMethod = None) -> QuasienergyResult:
    """Half-period quasienergy in the swapped small-splitting picture of a cosine drive, parity ``sigma_x``."""
    if thetaI < 0:
        raise ParameterOutOfRange(f"theta must be non-negative, got {thetaI}")
    argument = complex(A_I).real * sinc(thetaI)
    raw = math.asin(clamp_unit(argument, "sin(pi eps)")) / math.pi
    return _result(raw, method)


def eps_adiabatic(phi_pi: float, theta_a: float, C_a: float, method: MagnusMethod = None) -> QuasienergyResult:
    """Half-period quasienergy in the adiabatic picture from the dynamical phase ``phi(pi)``.

    With ``theta_a = C_a = 0`` this is the plain adiabatic approximation ``eps = phi(pi) / pi``.
    """
    _check_coefficients(theta_a, C_a)
    argument = math.sin(phi_pi) * math.cos(theta_a) + C_a * math.cos(phi_pi) * sinc(theta_a)
    raw = math.asin(clamp_unit(argument, "sin(pi eps)")) / math.pi
    if theta_a == 0 and C_a == 0:
        # zeroth order: keep the unfolded phase so the result is phi(pi)/pi mod 1 on every branch
        raw = phi_pi / math.pi
    return _result(raw, method)


def eps_full_composed(frame_full: AngleAxis, picture_full: AngleAxis, method: MagnusMethod = None) -> QuasienergyResult:
    """Quasienergy of ``U(2 pi) = U0(2 pi) U_pic(2 pi)`` for frames without a closed formula."""
    total = compose_bch(frame_full, picture_full)
    return _result(total.theta / (2 * math.pi), method)


def eps_half_composed(
    frame_half: AngleAxis, picture_half: AngleAxis, parity: ParityOp, method: MagnusMethod = None
) -> QuasienergyResult:
    """Parity-preserving quasienergy of ``U(pi) = U0(pi) U_pic(pi)``, parity axis in the same frame."""
    total = compose_bch(frame_half, picture_half)
    sine = float(np.dot(total.sin_axis(), parity.n_P))
    raw = math.asin(clamp_unit(sine, "sin(pi eps)")) / math.pi
    return _result(raw, method)
