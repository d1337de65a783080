"""Experiment driver: single runs, convergence sweeps, stability stress."""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from .bc import BcStrategy
from .collocation import build_scheme
from .disc1d import build_conservative, build_twocell
from .disc2d import build_system_2d
from .errors import InvalidOrderError
from .integrator import integrate
from .mesh2d import MovingMesh2D
from .problems import EXAMPLES, homogeneous_stress_variant, max_error
from .system import SolutionHistory
from .timegrid import TimeGrid

_BC_NAMES = {
    "gauss": BcStrategy.GAUSS_POINTS,
    "approx": BcStrategy.APPROX_POINTS,
    "extrap": BcStrategy.MOVING_DOMAIN_EXTRAPOLATED,
}


@dataclass
class RunConfig:
    """One experiment: example id, mesh sizes, order, step rule, bc, scheme."""

    example: str = "5.1-sin"
    omega: float = 2.0 * math.pi
    m: int = 1
    j_max: int = 40
    k_max: Optional[int] = None          # 2D only; defaults to j_max
    dt: Optional[float] = None           # None selects the coupled rule
    dt_rule_scale: float = 1.0           # dt = scale*(pi/j_max)^(1/m) when coupled
    bc: str = "approx"
    scheme: str = "conservative"         # conservative | twocell | 2d
    t_final: float = 1.0
    out: Optional[str] = None
    homogeneous_stress: bool = False

    def resolved_dt(self):
        if self.dt is not None:
            return self.dt
        return self.dt_rule_scale * (math.pi / self.j_max) ** (1.0 / self.m)

    @classmethod
    def from_dict(cls, raw):
        known = {f for f in cls.__dataclass_fields__}
        bad = set(raw) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**raw)


@dataclass
class RunResult:
    config: RunConfig
    history: SolutionHistory
    max_error: Optional[float]
    energy_monotone: Optional[bool]  # None when not applicable (f or g nonzero)
    wall_seconds: float


@dataclass
class ErrorReport:
    """Rows (refinement parameter, error, observed order) of one sweep."""

    mode: str
    rows: List[dict] = field(default_factory=list)

    def to_csv(self):
        lines = ["level,J_max,dt,max_error,observed_order,energy_monotone,wall_seconds"]
        for r in self.rows:
            order = "" if r["observed_order"] is None else f"{r['observed_order']:.17g}"
            mono = "" if r["energy_monotone"] is None else str(r["energy_monotone"]).lower()
            lines.append(
                f"{r['level']},{r['j_max']},{r['dt']:.17g},{r['max_error']:.17g},"
                f"{order},{mono},{r['wall_seconds']:.17g}")
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_csv())

    def orders(self):
        return [r["observed_order"] for r in self.rows if r["observed_order"] is not None]


def observed_order(e_coarse, e_fine, ratio):
    """log(e_coarse/e_fine) / log(ratio); exact for pure power-law errors."""
    return math.log(e_coarse / e_fine) / math.log(ratio)


def _build_case(config):
    """Problem, exact solution, mesh, and semi-discrete system for a config."""
    if config.m < 1 or config.m > 10:
        raise InvalidOrderError(f"order m must be in [1, 10], got {config.m}")
    if config.example not in EXAMPLES:
        raise ValueError(f"unknown example {config.example!r}; "
                         f"choose from {sorted(EXAMPLES)}")
    dt = config.resolved_dt()
    n_steps = max(1, math.ceil(round(config.t_final / dt, 12)))
    grid = TimeGrid.uniform(n_steps * dt, n_steps)

    problem, exact, mesh_gen = EXAMPLES[config.example](config.omega)
    if config.homogeneous_stress:
        problem = homogeneous_stress_variant(problem)

    if config.example == "5.3":
        if config.scheme != "2d":
            raise ValueError("example 5.3 requires scheme='2d'")
        k_max = config.k_max or config.j_max
        mesh = mesh_gen(grid, config.j_max, k_max)
        system = build_system_2d(problem, mesh, _BC_NAMES[config.bc])
    else:
        if config.scheme == "conservative":
            builder = build_conservative
        elif config.scheme == "twocell":
            builder = build_twocell
        else:
            raise ValueError(f"scheme {config.scheme!r} not available in 1D")
        bc = _BC_NAMES[config.bc]
        if config.example == "5.2":
            bc = BcStrategy.MOVING_DOMAIN_EXTRAPOLATED
        mesh = mesh_gen(grid, config.j_max)
        system = builder(problem, mesh, bc)
    return problem, exact, mesh, system, grid


def run(config):
    """Build and integrate one configuration; report error and energy flags."""
    t0 = time.perf_counter()
    problem, exact, mesh, system, grid = _build_case(config)
    scheme = build_scheme(config.m)

    if isinstance(mesh, MovingMesh2D):
        x, y = mesh.coords_at(0.0)
        u0 = np.broadcast_to(problem.u0(x[1:-1, 1:-1], y[1:-1, 1:-1]),
                             (mesh.j_max - 1, mesh.k_max - 1)).ravel(order="F")
    else:
        x = mesh.positions_at(0.0)
        u0 = np.broadcast_to(problem.u0(x[1:-1]), (mesh.j_max - 1,))

    history = integrate(system, grid, scheme, np.asarray(u0, dtype=float),
                        monitor=True, homogeneous=problem.homogeneous)
    err = None if config.homogeneous_stress else max_error(history, exact, mesh)
    mono = history.energy_monotone() if problem.homogeneous else None
    return RunResult(config=config, history=history, max_error=err,
                     energy_monotone=mono,
                     wall_seconds=time.perf_counter() - t0)


def _sweep_config(config, mode, level):
    cfg = replace(config)
    if mode == "temporal":
        base_dt = config.dt if config.dt is not None else 0.2
        cfg.dt = base_dt / 2 ** level
    elif mode in ("coupled", "spatial-coupled"):
        cfg.j_max = config.j_max * 2 ** level
        if cfg.k_max is not None:
            cfg.k_max = config.k_max * 2 ** level
        cfg.dt = None
    else:
        raise ValueError(f"unknown sweep mode {mode!r}")
    return cfg


def convergence(config, mode, levels, parallel=False):
    """Error sweep: 'temporal' halves dt at fixed mesh, 'coupled' doubles
    the mesh with dt following (pi/J_max)^(1/m)."""
    if levels < 3:
        raise ValueError("need at least 3 levels for a convergence sweep")
    configs = [_sweep_config(config, mode, lev) for lev in range(levels)]
    if parallel:
        with ThreadPoolExecutor(max_workers=min(levels, 4)) as pool:
            results = list(pool.map(run, configs))
    else:
        results = [run(c) for c in configs]

    report = ErrorReport(mode=mode)
    prev_err = None
    for lev, res in enumerate(results):
        err = res.max_error
        order = None
        if prev_err is not None and err > 0.0 and prev_err > 0.0:
            order = observed_order(prev_err, err, 2.0)
        report.rows.append({
            "level": lev,
            "j_max": res.config.j_max,
            "dt": res.config.resolved_dt(),
            "max_error": err,
            "observed_order": order,
            "energy_monotone": res.energy_monotone,
            "wall_seconds": res.wall_seconds,
        })
        prev_err = err
    if config.out:
        report.save(config.out)
    return report


def stability_stress(config, dt_list):
    """Homogeneous-variant runs over a list of step sizes.

    Each run keeps the initial data but zeroes f and g; reported are the
    max |u| over the trajectory, boundedness of the energy trace, and
    per-step energy monotonicity.
    """
    rows = []
    for dt in dt_list:
        cfg = replace(config)
        cfg.dt = float(dt)
        # At least three steps per run so the trace exercises several
        # inequalities even for very large dt.
        cfg.t_final = max(config.t_final, 3.0 * float(dt))
        cfg.homogeneous_stress = True
        res = run(cfg)
        energy = res.history.energy
        rows.append({
            "dt": float(dt),
            "max_abs_u": res.history.max_abs(),
            "energy_bounded": bool(np.all(energy <= energy[0] * (1.0 + 1e-10))),
            "energy_monotone": res.energy_monotone,
        })
    return rows
