from .angle_axis import (
    HADAMARD,
    IDENTITY,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    AngleAxis,
    check_special_unitary,
    compose_bch,
    frobenius_distance,
    from_magnus_coeffs,
    magnus_exponential,
    magnus_rotation,
    principal_log,
    sin_axis_of,
    to_matrix,
)
from .coefficients import MagnusCoefficients
