from .propagator import (
    PropagatorRequest,
    gp_sine,
    physical_hamiltonian,
    propagate,
    propagate_with_error,
    quasienergy_numeric,
    spec_propagator,
)
from .symmetry import is_half_period_antisymmetric, is_time_odd, pt_distances, symmetry_verify
