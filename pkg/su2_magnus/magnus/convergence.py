import logging
import math
import warnings

import numpy as np
from pydantic import BaseModel
from scipy import integrate

from su2_magnus.exceptions import QuadratureFailure
from su2_magnus.magnus.drive import ScalarDrive
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)


class ConvergenceCertificate(BaseModel):
    """``margin = int |v|`` over the window; the Magnus series converges when it stays below pi."""

    margin: float
    certified: bool

    def __float__(self):
        return self.margin


def convergence_margin(d: ScalarDrive) -> ConvergenceCertificate:
    """Integrated drive norm ``int_{t0}^{t1} |v(s)| ds`` with the sufficient-convergence certificate.

    Raises:
        QuadratureFailure: if the adaptive quadrature reports an unreliable result
    """
    settings = get_settings()
    if d.t1 == d.t0:
        return ConvergenceCertificate(margin=0.0, certified=True)

    def norm(s: float) -> float:
        return float(np.abs(d.sample(np.array([s]))[0]))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        margin, error = integrate.quad(norm, d.t0, d.t1, limit=settings.quad_limit, epsabs=1e-12, epsrel=1e-12)
    if error > 1e-8 * max(1.0, margin):
        raise QuadratureFailure(f"Integrated drive norm on [{d.t0}, {d.t1}] unreliable, error estimate {error:.2e}")
    certified = margin < math.pi
    if not certified:
        logger.warning("Magnus convergence not certified: int |v| = %.4f >= pi", margin)
    return ConvergenceCertificate(margin=margin, certified=certified)
