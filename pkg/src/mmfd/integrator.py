"""Unconditionally stable time stepping for M(t) du/dt = A(t) u + f(t).

The change of variables v = sqrt(M) u turns the system into

    dv/dt = B(t) v + sqrt(M)^{-1} f,
    B = sqrt(M)^{-1} (A + sqrt(M) d sqrt(M)/dt) sqrt(M)^{-1},

and B is negative semi-definite whenever A + sqrt(M) d sqrt(M)/dt is. Any
A-stable one-step method applied to the v equation then dissipates the
discrete energy v^T v for homogeneous problems; Gauss collocation with m
points does so at temporal order 2m.
"""

import warnings

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateMeshError, SingularSystemError, StepFailureError
from .linalg import max_symmetric_eig, solve_sparse
from .system import SolutionHistory, StageContext


def _sqrt_mass(sys, t):
    m = np.asarray(sys.mass_diag(t), dtype=float)
    if np.any(m <= 0.0):
        node = int(np.argmin(m))
        raise DegenerateMeshError(
            f"nonpositive mass entry {m[node]:g} at node {node}, t={t:g}",
            node=node, time=t)
    return np.sqrt(m)


def assemble_B(sys, t):
    """B(t) = sqrt(M)^{-1} (A + sqrt(M) d sqrt(M)/dt) sqrt(M)^{-1} at time t."""
    s = _sqrt_mass(sys, t)
    inv_s = 1.0 / s
    a = sp.csr_matrix(sys.stiffness(t))
    ds = np.asarray(sys.dsqrtmass_diag(t), dtype=float)
    scale = sp.diags(inv_s)
    return scale @ a @ scale + sp.diags(ds * inv_s)


def step_backward_euler(sys, t_n, dt, v_n):
    """One backward Euler step of the transformed system on [t_n, t_n + dt]."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    t1 = t_n + dt
    b = assemble_B(sys, t1)
    inv_s = 1.0 / _sqrt_mass(sys, t1)
    rhs = v_n + dt * inv_s * sys.load_at(t1)
    mat = sp.identity(sys.dimension, format="csr") - dt * b
    try:
        return solve_sparse(mat, rhs)
    except SingularSystemError as exc:
        raise StepFailureError(f"backward Euler step at t={t_n:g} failed: {exc}",
                               interval=(t_n, t1)) from exc


def step_collocation(sys, scheme, t_n, dt, v_n):
    """One m-point Gauss collocation step on [t_n, t_n + dt].

    Returns (v at t_n + dt, stage values at the m+1 approximation times).
    The stage unknowns are the values of the degree-m polynomial at the
    approximation times; the last one lies exactly at t_n + dt.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    m, l = scheme.m, sys.dimension
    times = scheme.stage_times(t_n, dt)

    blocks = []
    rhs = np.empty(m * l)
    for j in range(m):
        t_j = times[j]
        b_j = assemble_B(sys, t_j)
        inv_s = 1.0 / _sqrt_mass(sys, t_j)
        ctx = StageContext(t_start=t_n, dt=dt, scheme=scheme, stage=j)
        f_j = sys.load_at(t_j, stage=ctx)
        rhs[j * l:(j + 1) * l] = (inv_s * f_j
                                  - (scheme.D[j, 0] / dt) * v_n
                                  + scheme.L[j, 0] * (b_j @ v_n))
        blocks.append(b_j)

    eye = sp.identity(l, format="csr")
    mat = (sp.kron(scheme.D[:, 1:] / dt, eye, format="csr")
           - sp.block_diag(blocks, format="csr")
           @ sp.kron(scheme.L[:, 1:], eye, format="csr"))
    try:
        sol = solve_sparse(mat, rhs)
    except SingularSystemError as exc:
        raise StepFailureError(f"collocation step at t={t_n:g} failed: {exc}",
                               interval=(t_n, t_n + dt)) from exc

    stage_vals = [v_n] + [sol[j * l:(j + 1) * l] for j in range(m)]
    return stage_vals[-1], stage_vals


def integrate(sys, grid, scheme, u0, monitor=False, homogeneous=False,
              keep_stages=False):
    """March the system over the whole grid with the collocation scheme.

    Starts from v^0 = sqrt(M(0)) u0, records u^n = sqrt(M(t_n))^{-1} v^n and
    the energy trace E_n = (v^n)^T v^n. With ``monitor`` set and the caller
    declaring the problem homogeneous, any step where the energy grows by
    more than 1e-12 relative is flagged and reported with a warning.
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (sys.dimension,):
        raise ValueError(f"u0 has shape {u0.shape}, expected ({sys.dimension},)")

    t0 = float(grid.levels[0])
    v = _sqrt_mass(sys, t0) * u0
    us = [u0.copy()]
    energy = np.empty(grid.n_steps + 1)
    energy[0] = v @ v
    all_stages = [] if keep_stages else None
    flags = []

    for n in range(grid.n_steps):
        t_n = float(grid.levels[n])
        dt = grid.dt(n)
        try:
            v, stages = step_collocation(sys, scheme, t_n, dt, v)
        except StepFailureError as exc:
            exc.step_index = n
            raise
        energy[n + 1] = v @ v
        t_next = float(grid.levels[n + 1])
        us.append(v / _sqrt_mass(sys, t_next))
        if keep_stages:
            all_stages.append(stages)
        if monitor and homogeneous and energy[n + 1] > energy[n] * (1.0 + 1e-12):
            flags.append(n)

    if flags:
        warnings.warn(f"energy increased on {len(flags)} of {grid.n_steps} steps "
                      f"(first at step {flags[0]})", RuntimeWarning, stacklevel=2)
    return SolutionHistory(grid=grid, u=us, energy=energy, stages=all_stages,
                           monitor_flags=flags)


def certify_dissipativity(sys, times):
    """max_symmetric_eig(A(t) + sqrt(M(t)) d sqrt(M)/dt (t)) at each time.

    Nonpositive values (up to roundoff scaled by the stiffness magnitude)
    certify that the transformed system dissipates energy. The certificate
    is a diagnostic: callers compare against their own tolerance.
    """
    out = []
    for t in times:
        s = _sqrt_mass(sys, t)
        c = sp.csr_matrix(sys.stiffness(t)) + sp.diags(s * np.asarray(sys.dsqrtmass_diag(t)))
        out.append(max_symmetric_eig(c))
    return out


def certificate_tolerance(sys, times):
    """Roundoff-scaled tolerance 1e-9 * max |A| over the sampled times."""
    scale = 0.0
    for t in times:
        a = sp.csr_matrix(sys.stiffness(t))
        if a.nnz:
            scale = max(scale, float(np.max(np.abs(a.data))))
    return 1e-9 * max(scale, 1.0)
