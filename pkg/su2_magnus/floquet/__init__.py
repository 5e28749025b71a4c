from .folding import bz_fold, clamp_unit, fold_count, quasienergy_distance, sinc
from .parity import ParityOp, classify_crossing, eps_from_gp_trace, gp_identity_check, gp_sine_of
from .quasienergy import (
    MagnusMethod,
    QuasienergyResult,
    eps_adiabatic,
    eps_full_composed,
    eps_full_region1,
    eps_half_composed,
    eps_half_region1,
    eps_half_region2,
)
from .shirley import avg_transition_probability, locate_avoided_gap, locate_exact_crossing
