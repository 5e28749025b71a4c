import logging
import math
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, root_validator, validator

from su2_magnus.constants import DriveShape
from su2_magnus.exceptions import NonPeriodicDrive, ParameterOutOfRange

logger = logging.getLogger(__name__)

PERIODIC_SHAPES = (DriveShape.COS, DriveShape.SIN)


class DriveSpec(BaseModel):
    """Single-axis drive ``H(t) = (Delta/2) sigma_z + (f(t)/2) sigma_x`` with ``f = g f~(t)``.

    Times and energies are measured in units of the drive frequency, so ``omega`` is fixed to one.
    Sampled shapes are linearly interpolated; with a ``period`` they repeat outside the samples.
    """

    delta: float
    g: float
    omega: float = 1.0
    shape: DriveShape = DriveShape.COS
    period: Optional[float] = None
    sample_times: Optional[List[float]] = None
    sample_values: Optional[List[float]] = None

    class Config:
        frozen = True

    @validator("delta", "g")
    def finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("Drive parameters must be finite")
        return v

    @validator("omega")
    def unit_frequency(cls, v):
        if v != 1.0:
            raise ValueError("Energies are measured in units of omega, rescale delta and g instead")
        return v

    @root_validator(skip_on_failure=True)
    def validate_shape(cls, values):
        shape = values["shape"]
        if shape in PERIODIC_SHAPES:
            if values.get("period") is None:
                values["period"] = 2 * math.pi
            elif not math.isclose(values["period"], 2 * math.pi):
                raise ValueError(f"A {shape.value} drive has period 2 pi, got {values['period']}")
        elif shape == DriveShape.SAMPLED:
            times, samples = values.get("sample_times"), values.get("sample_values")
            if not times or not samples or len(times) != len(samples) or len(times) < 2:
                raise ValueError("A sampled drive needs matching time and value lists with at least two entries")
            if np.any(np.diff(times) <= 0):
                raise ValueError("Sample times must be strictly increasing")
            period = values.get("period")
            if period is not None:
                if not math.isclose(times[-1] - times[0], period):
                    raise ValueError(f"Periodic samples must span one period ({period}), got {times[-1] - times[0]}")
                if np.max(np.abs(samples)) > 1.0:
                    raise ValueError("Periodic shape functions must satisfy |f~| <= 1")
        elif values.get("period") is not None:
            raise ValueError(f"A {shape.value} drive is not periodic")
        return values

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def _t(self) -> np.ndarray:
        return np.asarray(self.sample_times)

    @property
    def _y(self) -> np.ndarray:
        return np.asarray(self.sample_values)

    def _wrap(self, t):
        if self.period is None:
            return t, np.zeros_like(t)
        shifted = t - self._t[0]
        turns = np.floor(shifted / self.period)
        return self._t[0] + shifted - turns * self.period, turns

    def shape_value(self, t):
        """Dimensionless shape ``f~(t)``."""
        t = np.asarray(t, dtype=float)
        if self.shape == DriveShape.COS:
            return np.cos(t)
        if self.shape == DriveShape.SIN:
            return np.sin(t)
        if self.shape == DriveShape.LINEAR:
            return t
        if self.shape == DriveShape.SECH:
            return 1.0 / np.cosh(t)
        return np.interp(t, self._t, self._y, period=self.period)

    def shape_derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.shape == DriveShape.COS:
            return -np.sin(t)
        if self.shape == DriveShape.SIN:
            return np.cos(t)
        if self.shape == DriveShape.LINEAR:
            return np.ones_like(t)
        if self.shape == DriveShape.SECH:
            return -np.tanh(t) / np.cosh(t)
        slopes = np.diff(self._y) / np.diff(self._t)
        local, _ = self._wrap(t)
        index = np.clip(np.searchsorted(self._t, local, side="right") - 1, 0, len(slopes) - 1)
        return slopes[index]

    def shape_integral(self, t):
        """``F~(t) = int_0^t f~``."""
        t = np.asarray(t, dtype=float)
        if self.shape == DriveShape.COS:
            return np.sin(t)
        if self.shape == DriveShape.SIN:
            return 1.0 - np.cos(t)
        if self.shape == DriveShape.LINEAR:
            return 0.5 * t**2
        if self.shape == DriveShape.SECH:
            return 2.0 * np.arctan(np.tanh(0.5 * t))
        return self._sampled_primitive(t) - self._sampled_primitive(np.zeros(1))[0]

    def _sampled_primitive(self, t: np.ndarray) -> np.ndarray:
        # exact integral of the piecewise linear interpolant, measured from the first sample
        times, values = self._t, self._y
        slopes = np.diff(values) / np.diff(times)
        nodes = np.concatenate(([0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * np.diff(times))))
        local, turns = self._wrap(t)
        if self.period is None:
            local = np.clip(local, times[0], times[-1])
        index = np.clip(np.searchsorted(times, local, side="right") - 1, 0, len(slopes) - 1)
        step = local - times[index]
        inside = nodes[index] + values[index] * step + 0.5 * slopes[index] * step**2
        result = inside + turns * nodes[-1]
        if self.period is None:
            # constant extrapolation outside the samples
            raw = np.asarray(t, dtype=float)
            result = result + np.where(raw > times[-1], values[-1] * (raw - times[-1]), 0.0)
            result = result + np.where(raw < times[0], values[0] * (raw - times[0]), 0.0)
        return result

    def f(self, t):
        return self.g * self.shape_value(t)

    def f_dot(self, t):
        return self.g * self.shape_derivative(t)

    def require_periodic(self):
        if not self.is_periodic:
            raise NonPeriodicDrive(f"Quasienergies need a periodic drive, got shape '{self.shape.value}'")

    def with_parameters(self, delta: float = None, g: float = None) -> "DriveSpec":
        return self.copy(update={"delta": self.delta if delta is None else delta, "g": self.g if g is None else g})


def load_sampled_drive(
    path: Union[str, Path], delta: float, g: float, period: Optional[float] = None
) -> DriveSpec:
    """Read a two-column ``time, f~`` text file (whitespace or comma separated, ``#`` comments).

    Raises:
        ParameterOutOfRange: if the file holds fewer than two rows or a row without two columns
    """
    rows = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        content = line.split("#", 1)[0].replace(",", " ").split()
        if not content:
            continue
        if len(content) != 2:
            raise ParameterOutOfRange(f"{path}, line {number}: expected two columns, got {len(content)}")
        rows.append((float(content[0]), float(content[1])))
    if len(rows) < 2:
        raise ParameterOutOfRange(f"{path}: a sampled drive needs at least two rows")
    times, values = zip(*rows)
    logger.debug("Loaded %d drive samples from %s", len(rows), path)
    return DriveSpec(
        delta=delta,
        g=g,
        shape=DriveShape.SAMPLED,
        period=period,
        sample_times=list(times),
        sample_values=list(values),
    )


def monotone_segments(spec: DriveSpec, t0: float, t1: float) -> List[float]:
    """Interior breakpoints of ``[t0, t1]`` at which ``f`` changes its direction."""
    if spec.g == 0 or t1 <= t0:
        return []
    if spec.shape in PERIODIC_SHAPES:
        offset = 0.0 if spec.shape == DriveShape.COS else 0.5 * math.pi
        first = math.ceil((t0 - offset) / math.pi)
        candidates = [offset + k * math.pi for k in range(first, math.floor((t1 - offset) / math.pi) + 1)]
    elif spec.shape == DriveShape.SECH:
        candidates = [0.0]
    elif spec.shape == DriveShape.LINEAR:
        candidates = []
    else:
        times = np.asarray(spec.sample_times)
        slopes = np.sign(np.diff(np.asarray(spec.sample_values)))
        turning = [times[k + 1] for k in range(len(slopes) - 1) if slopes[k] * slopes[k + 1] < 0]
        candidates = list(turning)
        if spec.period is not None:
            if slopes[-1] * slopes[0] < 0:
                turning.append(times[0])
            first = math.floor((t0 - times[0]) / spec.period)
            last = math.ceil((t1 - times[0]) / spec.period)
            candidates = [b + k * spec.period for k in range(first, last + 1) for b in turning]
    return sorted(c for c in candidates if t0 < c < t1)
