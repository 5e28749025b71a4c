"""Top-level package for su2-magnus."""
from .models import LzParams, RabiPoint, lz_exact, lz_magnus, rabi_exact_heun, rabi_quasienergy
from .su2 import AngleAxis, MagnusCoefficients, compose_bch

__version__ = "0.1.0"
