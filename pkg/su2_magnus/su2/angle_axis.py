"""Angle-axis algebra of SU(2).

An element is written ``U = cos(theta) I - i sin(theta) n.sigma``. Values are canonical when
``theta`` lies in ``[0, pi]``; larger angles are folded with ``theta -> 2 pi - theta`` and a negated axis.
"""
import math
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, root_validator, validator

from su2_magnus.exceptions import NotSpecialUnitary

DEGENERATE_THETA = 1e-14
AXIS_TOLERANCE = 1e-12
UNITARITY_TOLERANCE = 1e-10
Z_AXIS = (0.0, 0.0, 1.0)

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
HADAMARD = (SIGMA_X + SIGMA_Z) / math.sqrt(2.0)

Axis = Tuple[float, float, float]


class AngleAxis(BaseModel):
    """Rotation angle and unit axis of an SU(2) element.

    Attributes:
        theta: rotation angle in radians, non-negative
        axis: unit 3-vector, the placeholder (0, 0, 1) when the element is degenerate
        degenerate: the axis carries no information (theta = 0 or the central element -I)
        folded: the angle was folded into [0, pi] with an axis flip
    """

    theta: float
    axis: Axis = Z_AXIS
    degenerate: bool = False
    folded: bool = False

    class Config:
        frozen = True

    @validator("theta")
    def check_theta(cls, v):
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"Rotation angle must be finite and non-negative, got {v}")
        return v

    @root_validator(skip_on_failure=True)
    def check_unit_axis(cls, values):
        axis = values.get("axis")
        if values.get("theta", 0.0) > DEGENERATE_THETA and not values.get("degenerate"):
            norm = math.sqrt(sum(a * a for a in axis))
            if abs(norm - 1.0) > AXIS_TOLERANCE:
                raise ValueError(f"Axis must be a unit vector, |axis| = {norm}")
        return values

    @classmethod
    def identity(cls) -> "AngleAxis":
        return cls(theta=0.0, axis=Z_AXIS, degenerate=True)

    @classmethod
    def from_rotation(cls, angle: float, axis: Sequence[float]) -> "AngleAxis":
        """Build a canonical element from a signed angle and a (not necessarily normalized) axis."""
        vec = np.asarray(axis, dtype=float)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0 or angle == 0.0:
            return cls.identity()
        vec = vec / norm
        if angle < 0:
            angle, vec = -angle, -vec
        return cls._canonical(angle, vec)

    @classmethod
    def from_sin_axis(cls, cos_theta: float, sin_axis: np.ndarray) -> "AngleAxis":
        """Element with the given ``cos(theta)`` and ``sin(theta) n``."""
        sin_theta = float(np.linalg.norm(sin_axis))
        theta = math.atan2(sin_theta, cos_theta)
        if sin_theta < DEGENERATE_THETA:
            return cls(theta=0.0 if cos_theta > 0 else math.pi, axis=Z_AXIS, degenerate=True)
        return cls._canonical(theta, np.asarray(sin_axis) / sin_theta)

    @classmethod
    def _canonical(cls, theta: float, axis: np.ndarray) -> "AngleAxis":
        theta = math.fmod(theta, 2 * math.pi)
        folded = False
        if theta > math.pi:
            theta = 2 * math.pi - theta
            axis = -axis
            folded = True
        if theta < DEGENERATE_THETA:
            return cls(theta=0.0, axis=Z_AXIS, degenerate=True, folded=folded)
        if abs(theta - math.pi) <= AXIS_TOLERANCE:
            axis = _antipode_sign(axis)
        return cls(theta=theta, axis=tuple(float(a) for a in axis), folded=folded)

    def canonical(self) -> "AngleAxis":
        if self.degenerate:
            return self
        return self._canonical(self.theta, np.asarray(self.axis))

    def inverse(self) -> "AngleAxis":
        if self.degenerate:
            return self
        return AngleAxis(theta=self.theta, axis=tuple(-a for a in self.axis), folded=self.folded)

    def sin_axis(self) -> np.ndarray:
        return math.sin(self.theta) * np.asarray(self.axis)

    def matrix(self) -> np.ndarray:
        return to_matrix(self)


def _antipode_sign(axis: np.ndarray) -> np.ndarray:
    # at theta = pi the axes n and -n describe the same element
    for component in axis:
        if abs(component) > 1e-15:
            return axis if component > 0 else -axis
    return axis


def magnus_rotation(A: complex, C: float) -> AngleAxis:
    """Angle and axis of ``exp(-i(A sigma+ + A* sigma- + C sigma_z))`` with the angle left unfolded.

    ``theta = sqrt(|A|^2 + C^2)`` may exceed ``pi``; the quasienergy formulas that pair ``theta`` with the raw
    ``C`` or ``A`` need it this way.
    """
    A = complex(A)
    theta = math.sqrt(abs(A) ** 2 + C * C)
    if theta < DEGENERATE_THETA:
        return AngleAxis.identity()
    axis = (A.real / theta, -A.imag / theta, C / theta)
    return AngleAxis(theta=theta, axis=axis)


def from_magnus_coeffs(A: complex, C: float) -> AngleAxis:
    """Canonical angle-axis form of ``exp(-i(A sigma+ + A* sigma- + C sigma_z))``."""
    return magnus_rotation(A, C).canonical()


def to_matrix(r: AngleAxis) -> np.ndarray:
    nx, ny, nz = r.axis
    c = math.cos(r.theta)
    s = math.sin(r.theta)
    return np.array(
        [
            [c - 1j * s * nz, -1j * s * (nx - 1j * ny)],
            [-1j * s * (nx + 1j * ny), c + 1j * s * nz],
        ],
        dtype=complex,
    )


def magnus_exponential(A: complex, C: float) -> np.ndarray:
    return to_matrix(from_magnus_coeffs(A, C))


def compose_bch(first: AngleAxis, second: AngleAxis) -> AngleAxis:
    """Closed-form product ``exp(-i theta0 n0.sigma) exp(-i theta1 n1.sigma)``, ``first`` on the left.

    Args:
        first: left factor
        second: right factor

    Returns:
        Canonical angle-axis form of the product.
    """
    c0, c1 = math.cos(first.theta), math.cos(second.theta)
    s0, s1 = math.sin(first.theta), math.sin(second.theta)
    n0 = np.asarray(first.axis)
    n1 = np.asarray(second.axis)
    cos_theta = c0 * c1 - s0 * s1 * float(np.dot(n0, n1))
    sin_axis = s0 * c1 * n0 + c0 * s1 * n1 + s0 * s1 * np.cross(n0, n1)
    return AngleAxis.from_sin_axis(cos_theta, sin_axis)


def check_special_unitary(m: np.ndarray, tol: float = UNITARITY_TOLERANCE) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise NotSpecialUnitary(f"Expected a 2x2 matrix, got shape {m.shape}")
    unitarity = np.linalg.norm(m.conj().T @ m - IDENTITY)
    det_error = abs(np.linalg.det(m) - 1.0)
    if unitarity > tol or det_error > tol:
        raise NotSpecialUnitary(f"Matrix is not in SU(2): |U'U - I| = {unitarity:.3e}, |det U - 1| = {det_error:.3e}")
    return m


def sin_axis_of(m: np.ndarray) -> Tuple[float, np.ndarray]:
    """Return ``cos(theta)`` and ``sin(theta) n`` read off the entries of an SU(2) matrix."""
    cos_theta = 0.5 * (m[0, 0] + m[1, 1]).real
    sx = (0.5j * (m[0, 1] + m[1, 0])).real
    sy = (0.5 * (m[1, 0] - m[0, 1])).real
    sz = (0.5j * (m[0, 0] - m[1, 1])).real
    return cos_theta, np.array([sx, sy, sz])


def principal_log(m: np.ndarray) -> AngleAxis:
    """Principal logarithm of an SU(2) matrix in angle-axis form, ``theta`` in [0, pi].

    Raises:
        NotSpecialUnitary: if ``m`` is not unitary with unit determinant within 1e-10
    """
    m = check_special_unitary(m)
    cos_theta, sin_axis = sin_axis_of(m)
    return AngleAxis.from_sin_axis(cos_theta, sin_axis)


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))
