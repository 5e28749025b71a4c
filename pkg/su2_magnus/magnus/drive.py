from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, root_validator

from su2_magnus.constants import Smoothness
from su2_magnus.magnus.grid import PanelGrid, panel_edges
from su2_magnus.settings import get_settings

ArrayFunction = Callable[[np.ndarray], np.ndarray]


class ScalarDrive(BaseModel):
    """Complex scalar ``v(t)`` of a Hamiltonian ``H = v sigma+ + v* sigma-`` on ``[t0, t1]``.

    ``v`` must accept numpy arrays. ``variation_rate`` is an optional analytic bound on how fast ``v``
    changes (e.g. its phase rate); it sizes the quadrature panels for strongly oscillating drives whose
    oscillations a uniform pilot grid cannot resolve.
    """

    v: ArrayFunction
    t0: float
    t1: float
    smoothness: Smoothness = Smoothness.ANALYTIC
    variation_rate: Optional[ArrayFunction] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @root_validator(skip_on_failure=True)
    def check_window(cls, values):
        t0, t1 = values["t0"], values["t1"]
        if not (np.isfinite(t0) and np.isfinite(t1)):
            raise ValueError("Drive windows must be finite, map infinite domains first")
        if t1 < t0:
            raise ValueError(f"Drive window must satisfy t0 <= t1, got [{t0}, {t1}]")
        return values

    def restricted(self, t0: float = None, t1: float = None) -> "ScalarDrive":
        return self.copy(update={"t0": self.t0 if t0 is None else t0, "t1": self.t1 if t1 is None else t1})

    def sample(self, t: np.ndarray) -> np.ndarray:
        return np.asarray(self.v(t), dtype=complex) * np.ones_like(t)

    def grid(self, min_panels: int = None) -> PanelGrid:
        settings = get_settings()
        edges = panel_edges(
            self.t0,
            self.t1,
            density=self.variation_rate,
            v=self.v,
            radians_per_panel=settings.radians_per_panel,
            min_panels=max(min_panels or 0, settings.min_panels),
        )
        return PanelGrid(edges, settings.nodes_per_panel)
