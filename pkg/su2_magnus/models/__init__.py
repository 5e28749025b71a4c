from .landau_zener import (
    LzParams,
    lz_C2,
    lz_coefficients,
    lz_exact,
    lz_J,
    lz_magnus,
    lz_symmetry_report,
    lz_transition_history,
    stokes_phase_sma,
)
from .rabi import (
    RabiPoint,
    annotate_crossing,
    heun_values,
    rabi_exact_heun,
    rabi_quasienergy,
    rabi_symmetry_check,
    refine_exact_crossing,
    region2_first_order,
)
