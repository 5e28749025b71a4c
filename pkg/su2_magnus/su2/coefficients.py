from typing import List

import numpy as np
from pydantic import BaseModel, root_validator, validator

from su2_magnus.su2.angle_axis import AngleAxis, from_magnus_coeffs, to_matrix


class MagnusCoefficients(BaseModel):
    """Per-order coefficients of ``Omega = A sigma+ + A* sigma- + C sigma_z`` at one time.

    ``A[k]`` and ``C[k]`` hold order ``k + 1``.
    """

    order: int
    A: List[complex]
    C: List[float]
    time: float

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @validator("A", pre=True)
    def coerce_complex(cls, v):
        return [complex(a) for a in v]

    @validator("C", pre=True)
    def coerce_real(cls, v):
        return [float(np.real(c)) for c in v]

    @root_validator(skip_on_failure=True)
    def check_lengths(cls, values):
        order = values["order"]
        if order < 1:
            raise ValueError("Magnus order must be at least 1")
        if len(values["A"]) != order or len(values["C"]) != order:
            raise ValueError(f"Expected {order} coefficients per series, got {len(values['A'])} and {len(values['C'])}")
        return values

    @property
    def A_total(self) -> complex:
        return complex(sum(self.A))

    @property
    def C_total(self) -> float:
        return float(sum(self.C))

    def truncate(self, order: int) -> "MagnusCoefficients":
        if order > self.order:
            raise ValueError(f"Cannot truncate order {self.order} coefficients to order {order}")
        return MagnusCoefficients(order=order, A=self.A[:order], C=self.C[:order], time=self.time)

    def angle_axis(self) -> AngleAxis:
        return from_magnus_coeffs(self.A_total, self.C_total)

    def propagator(self) -> np.ndarray:
        """Truncated propagator ``exp(-i Omega)``; unitary whatever the order."""
        return to_matrix(self.angle_axis())

    def vanishing_residual(self) -> float:
        """Largest even-order ``|A|`` or odd-order ``|C|``, relative to ``max(|A_1|, 1)``."""
        scale = max(abs(self.A[0]), 1.0)
        even_a = [abs(a) for k, a in enumerate(self.A) if (k + 1) % 2 == 0]
        odd_c = [abs(c) for k, c in enumerate(self.C) if (k + 1) % 2 == 1]
        return max(even_a + odd_c, default=0.0) / scale
