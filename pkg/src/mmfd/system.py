"""Semi-discrete systems M(t) du/dt = A(t) u + f(t) and their trajectories."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .collocation import CollocationScheme
from .timegrid import TimeGrid


@dataclass(frozen=True)
class StageContext:
    """Identifies one collocation stage of one step.

    Passed to the load evaluator so boundary data can be sampled per the
    active strategy: the stage's Gauss time is t_start + scheme.rho[stage]*dt
    and the step's approximation times are t_start + scheme.rho_tilde*dt.
    """

    t_start: float
    dt: float
    scheme: CollocationScheme
    stage: int  # 0-based index into scheme.rho

    @property
    def time(self):
        return self.t_start + self.scheme.rho[self.stage] * self.dt


@dataclass(frozen=True)
class SemiDiscreteSystem:
    """Time-parameterized system M(t) du/dt = A(t) u + f(t) with diagonal M.

    Evaluators must be pure functions of their arguments (safe to call from
    any thread). ``load`` accepts an optional StageContext so boundary data
    folded into f can follow the collocation stage structure; it must also
    work with ``stage=None`` (pointwise sampling).
    """

    dimension: int
    mass_diag: Callable[[float], np.ndarray]
    dsqrtmass_diag: Callable[[float], np.ndarray]
    stiffness: Callable[[float], "scipy.sparse.spmatrix"]  # noqa: F821
    load: Callable[..., np.ndarray]

    def load_at(self, t, stage=None):
        if stage is None:
            return self.load(t)
        return self.load(t, stage=stage)


@dataclass
class SolutionHistory:
    """Solution per time level plus the energy trace E_n = (v^n)^T v^n.

    The energy is recorded in the transformed variable v = sqrt(M) u, i.e.
    E_n = (u^n)^T M(t_n) u^n, the quantity the stability inequality bounds.
    """

    grid: TimeGrid
    u: List[np.ndarray]
    energy: np.ndarray
    stages: Optional[List[List[np.ndarray]]] = None
    monitor_flags: List[int] = field(default_factory=list)

    def energy_monotone(self, rtol=1e-12):
        e = self.energy
        return bool(np.all(e[1:] <= e[:-1] * (1.0 + rtol)))

    def max_abs(self):
        return max(float(np.max(np.abs(un))) if un.size else 0.0 for un in self.u)
