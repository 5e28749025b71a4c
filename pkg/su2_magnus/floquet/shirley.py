import logging
from typing import Callable, Tuple

from scipy import optimize

from su2_magnus.exceptions import CrossingInStencil, ParameterOutOfRange
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)

JUMP = 0.25
KINK_SLOPE = 0.1
MAX_HALVINGS = 4


def _central_slope(eps_of_delta: Callable[[float], float], delta: float, h: float) -> float:
    lower, centre, upper = eps_of_delta(delta - h), eps_of_delta(delta), eps_of_delta(delta + h)
    left, right = (centre - lower) / h, (upper - centre) / h
    if max(abs(centre - lower), abs(upper - centre)) > JUMP:
        raise CrossingInStencil(f"Quasienergy branch jumps within [{delta - h}, {delta + h}]")
    if left * right < 0 and min(abs(left), abs(right)) > KINK_SLOPE:
        raise CrossingInStencil(f"Quasienergy has a kink (crossing) within [{delta - h}, {delta + h}]")
    return 0.5 * (left + right)


def avg_transition_probability(eps_of_delta: Callable[[float], float], delta: float, h: float = None) -> float:
    """Time-averaged transition probability ``(1/2)[1 - 4 (d eps / d Delta)^2]``.

    The derivative is a central difference whose step is halved until two successive estimates agree.

    Raises:
        CrossingInStencil: if the quasienergy is not smooth across the stencil
    """
    h = h or get_settings().shirley_step
    slope = _central_slope(eps_of_delta, delta, h)
    for _ in range(MAX_HALVINGS):
        h *= 0.5
        refined = _central_slope(eps_of_delta, delta, h)
        converged = abs(refined - slope) <= 1e-6 * max(1.0, abs(slope))
        slope = refined
        if converged:
            break
    logger.debug("Shirley slope at Delta=%g: %.8f (h=%.1e)", delta, slope, h)
    return 0.5 * (1.0 - 4.0 * slope**2)


def locate_exact_crossing(signed_sine: Callable[[float], float], lo: float, hi: float, tol: float = None) -> float:
    """Root of a signed parity sine ``(n . n_P) sin(theta)`` bracketed by ``[lo, hi]``.

    Raises:
        ParameterOutOfRange: if the bracket does not contain a sign change
    """
    tol = tol or get_settings().crossing_tolerance
    f_lo, f_hi = signed_sine(lo), signed_sine(hi)
    if f_lo * f_hi > 0:
        raise ParameterOutOfRange(f"No sign change of the parity sine on [{lo}, {hi}]")
    return optimize.brentq(signed_sine, lo, hi, xtol=tol * 1e-2)


def locate_avoided_gap(
    eps_fn: Callable[[float], float], lo: float, hi: float, boundary: bool = True, tol: float = None
) -> Tuple[float, float]:
    """Location and width of the narrowest gap between ``eps`` and its partner level on ``[lo, hi]``.

    Args:
        eps_fn: quasienergy as a function of the scanned parameter
        lo: lower end of the scan
        hi: upper end of the scan
        boundary: gap at the zone boundary (``1 - 2|eps|``) instead of the zone centre (``2|eps|``)
        tol: location tolerance

    Returns:
        The parameter at the minimum and the gap there.
    """
    tol = tol or get_settings().crossing_tolerance

    def gap(x: float) -> float:
        eps = abs(eps_fn(x))
        return 1.0 - 2.0 * eps if boundary else 2.0 * eps

    found = optimize.minimize_scalar(gap, bounds=(lo, hi), method="bounded", options={"xatol": tol})
    return float(found.x), float(found.fun)
