from .closed_forms import closed_form_a1, closed_form_a3, closed_form_c2
from .convergence import ConvergenceCertificate, convergence_margin
from .drive import ScalarDrive
from .grid import PanelGrid, panel_edges
from .recursion import (
    RecursionState,
    bernoulli_weights,
    build_state,
    magnus_history,
    magnus_propagator,
    piecewise_magnus,
    recursive_magnus,
)
