"""Sweep configuration, from command-line flags or a ``key = value`` text file."""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pydantic
from pydantic import BaseModel, root_validator, validator

from su2_magnus.constants import DriveShape, MethodKind, ModelName, PictureKind, Spacing
from su2_magnus.exceptions import ConfigError
from su2_magnus.floquet import MagnusMethod

logger = logging.getLogger(__name__)

MODEL_AXES = {ModelName.LZ: ("gamma",), ModelName.RABI: ("delta", "g")}
DEFAULT_LZ_METHODS = ("magnus:adiabatic:1:full", "magnus:adiabatic:2:full", "magnus:adiabatic:3:full")
DEFAULT_RABI_METHODS = ("oracle",)

LIST_KEYS = {"method"}
FILE_KEYS = {
    "model": "model",
    "axis": "axis",
    "min": "min",
    "max": "max",
    "count": "count",
    "spacing": "spacing",
    "method": "methods",
    "out": "out",
    "tol": "tolerance",
    "model_params": "model_params",
    "samples": "samples",
    "workers": "workers",
}


class SweepConfig(BaseModel):
    model: ModelName
    axis: Optional[str] = None
    min: Optional[float] = None
    max: Optional[float] = None
    count: Optional[int] = None
    spacing: Spacing = Spacing.LIN
    methods: List[MagnusMethod] = []
    out: Optional[Path] = None
    tolerance: Optional[float] = None
    model_params: Dict[str, Union[float, str]] = {}
    samples: Optional[Path] = None
    workers: int = 1
    progress: bool = True

    @validator("methods", pre=True, each_item=True)
    def parse_method(cls, v):
        return MagnusMethod.parse(v) if isinstance(v, str) else v

    @validator("model_params", pre=True)
    def parse_params(cls, v):
        return parse_model_params(v) if isinstance(v, str) else v

    @validator("count")
    def at_least_two(cls, v):
        if v is not None and v < 2:
            raise ValueError(f"A sweep needs at least two points, got count={v}")
        return v

    @validator("tolerance")
    def tolerance_range(cls, v):
        if v is not None and not 1e-13 <= v <= 1e-6:
            raise ValueError(f"The oracle tolerance must lie in [1e-13, 1e-6], got {v}")
        return v

    @validator("workers")
    def positive_workers(cls, v):
        if v < 1:
            raise ValueError("At least one worker is needed")
        return v

    @root_validator(skip_on_failure=True)
    def check_sweep(cls, values):
        model = values["model"]
        if not values.get("methods"):
            defaults = DEFAULT_LZ_METHODS if model == ModelName.LZ else DEFAULT_RABI_METHODS
            values["methods"] = [MagnusMethod.parse(m) for m in defaults]
        for method in values["methods"]:
            if model == ModelName.LZ and (method.kind != MethodKind.MAGNUS or method.picture != PictureKind.ADIABATIC):
                raise ValueError(f"Landau-Zener sweeps use magnus:adiabatic:<order>:full methods, got {method.label}")
            if model == ModelName.LZ and method.order < 1:
                raise ValueError("Landau-Zener Magnus orders start at 1")
        if values.get("axis") is None:
            return values
        if values["axis"] not in MODEL_AXES[model]:
            raise ValueError(f"Axis '{values['axis']}' is not a parameter of the {model.value} model")
        lo, hi, count = values.get("min"), values.get("max"), values.get("count")
        if lo is None or hi is None or count is None:
            raise ValueError("A sweep needs min, max and count")
        if not lo < hi:
            raise ValueError(f"Sweep bounds must satisfy min < max, got [{lo}, {hi}]")
        if values["spacing"] == Spacing.LOG and lo <= 0:
            raise ValueError("Logarithmic sweeps need a positive lower bound")
        return values

    def grid(self) -> np.ndarray:
        if self.axis is None:
            raise ConfigError("No sweep axis configured", field="axis")
        if self.spacing == Spacing.LOG:
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)

    @property
    def shape(self) -> DriveShape:
        return DriveShape(self.model_params.get("shape", DriveShape.COS.value))

    def param(self, name: str, default: float) -> float:
        return float(self.model_params.get(name, default))

    def header(self) -> Dict[str, str]:
        """Metadata block written above every table."""
        entries = {"model": self.model.value}
        if self.axis:
            entries["axis"] = f"{self.axis} {self.spacing.value} [{self.min}, {self.max}] x {self.count}"
        if self.model_params:
            entries["model_params"] = ",".join(f"{k}={v}" for k, v in sorted(self.model_params.items()))
        for method in self.methods:
            details = {"picture": method.picture, "order": method.order, "period": method.period}
            text = ", ".join(f"{k}={getattr(v, 'value', v)}" for k, v in details.items() if v is not None)
            entries[f"method {method.label}"] = text or method.kind.value
        entries["tolerance"] = "default" if self.tolerance is None else f"{self.tolerance:g} (override)"
        return entries


def parse_model_params(text: str) -> Dict[str, Union[float, str]]:
    """Parse ``g=1,delta=0.5,shape=cos``."""
    params = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        if "=" not in item:
            raise ValueError(f"Model parameters are name=value pairs, got '{item}'")
        name, value = (s.strip() for s in item.split("=", 1))
        params[name] = value if name == "shape" else float(value)
    if "shape" in params:
        DriveShape(params["shape"])
    return params


def read_config_file(path: Union[str, Path]) -> Tuple[dict, Dict[str, int]]:
    """Parse a ``key = value`` file into raw field values and the line each field came from.

    ``method`` may repeat; ``#`` starts a comment.

    Raises:
        ConfigError: on malformed lines, unknown keys or repeated scalar keys
    """
    values: dict = {}
    lines: Dict[str, int] = {}
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError("expected 'key = value'", line=number)
        key, value = (s.strip() for s in content.split("=", 1))
        if key not in FILE_KEYS:
            raise ConfigError(f"unknown key, expected one of {', '.join(sorted(FILE_KEYS))}", line=number, field=key)
        field = FILE_KEYS[key]
        if key in LIST_KEYS:
            values.setdefault(field, []).append(value)
            lines.setdefault(field, number)
            continue
        if field in values:
            raise ConfigError("key given twice", line=number, field=key)
        values[field] = value
        lines[field] = number
    return values, lines


def build_config(values: dict, lines: Dict[str, int] = None) -> SweepConfig:
    """Validate raw values, translating model errors into :class:`ConfigError` with line and field."""
    lines = lines or {}
    try:
        return SweepConfig(**values)
    except pydantic.ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else None
        if field == "__root__":
            field = None
        key = {v: k for k, v in FILE_KEYS.items()}.get(field, field)
        raise ConfigError(error["msg"], line=lines.get(field), field=key) from e
