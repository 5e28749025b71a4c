from functools import lru_cache

from pydantic import BaseSettings, Field, validator


class NumericalSettings(BaseSettings):
    """Engineering constants of the numerical kernels.

    Every value can be overridden with an environment variable prefixed ``SU2MAGNUS_`` (for example
    ``SU2MAGNUS_ORACLE_TOLERANCE=1e-12``) or through a ``.env`` file in the working directory.
    The calibration constants at the bottom translate qualitative accuracy statements ("almost
    indistinguishable") into numbers; they are choices of this package, not physical facts.
    """

    # nested quadrature
    a1_tolerance: float = 1e-10
    c2_tolerance: float = 1e-8
    a3_tolerance: float = 1e-7
    recursion_tolerance: float = 1e-8
    nodes_per_panel: int = Field(17, ge=5, le=65)
    radians_per_panel: float = Field(3.0, gt=0)
    min_panels: int = Field(8, ge=1)
    max_doublings: int = Field(7, ge=1)
    quad_limit: int = 400

    # exact reference
    oracle_tolerance: float = Field(1e-11, ge=1e-13, le=1e-6)
    oracle_segment: float = 0.5

    # quasienergies
    crossing_tolerance: float = 1e-6
    clamp_tolerance: float = 1e-9
    gp_violation_tolerance: float = 1e-8
    shirley_step: float = 1e-3

    # special functions
    heun_tolerance: float = 1e-12
    heun_max_terms: int = 10_000

    # Landau-Zener window
    lz_tail_tolerance: float = 1e-7

    # calibration of qualitative claims
    lz_order3_tolerance: float = 5e-3
    stokes_tolerance: float = 0.03
    region3_tolerance: float = 1e-3
    rabi_order3_tolerance: float = 2e-3
    symmetry_tolerance: float = 1e-7

    class Config:
        env_prefix = "SU2MAGNUS_"
        env_file = ".env"

    @validator("a1_tolerance", "c2_tolerance", "a3_tolerance", "recursion_tolerance", "crossing_tolerance")
    def check_positive(cls, v):
        if v <= 0:
            raise ValueError("Tolerances must be positive")
        return v


@lru_cache()
def get_settings() -> NumericalSettings:
    return NumericalSettings()
