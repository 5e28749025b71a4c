"""Exceptions raised by su2_magnus.

Problems with the inputs derive from ``ValueError``, failures of a numerical method to reach its
requested accuracy derive from ``RuntimeError``. Both share :class:`Su2MagnusError`.
"""
from typing import Optional


class Su2MagnusError(Exception):
    """Base class of all library errors."""


class ValidationError(Su2MagnusError, ValueError):
    pass


class NumericalError(Su2MagnusError, RuntimeError):
    pass


class ParameterOutOfRange(ValidationError):
    pass


class NonPeriodicDrive(ValidationError):
    pass


class NotSpecialUnitary(ValidationError):
    pass


class DomainError(ValidationError):
    """An arcsin/arccos argument left [-1, 1] by more than the clamp tolerance."""


class ConfigError(ValidationError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(prefix + message)


class QuadratureFailure(NumericalError):
    pass


class GridTooCoarse(NumericalError):
    pass


class SeriesNotConverged(NumericalError):
    pass


class StepSizeUnderflow(NumericalError):
    pass


class CrossingInStencil(NumericalError):
    pass


class GPViolation(NumericalError):
    pass
