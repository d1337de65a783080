"""Spatial discretization of 1D convection-diffusion on a moving mesh.

Three central schemes for the transformed equation, all built around
half-point fluxes so that the semi-discrete system satisfies the
dissipativity condition needed for unconditional stability:

  conservative   flux (b - xdot) u at half points; mass (h_{j+1}+h_j)/2.
  halfpoint      nonconservative form, mesh convection via half-point flux
                 averages; algebraically identical to the conservative one.
  twocell        mesh convection by the two-cell difference
                 -xdot_j (u_{j+1}-u_{j-1})/2; dissipative only under a mesh
                 speed restriction, checked and reported as warnings.
"""

import warnings

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .bc import BcStrategy, boundary_sample_times
from .errors import DegenerateExtrapolationError
from .system import SemiDiscreteSystem

_VARIANTS = {
    "conservative": _kernels.VARIANT_CONSERVATIVE,
    "halfpoint": _kernels.VARIANT_HALFPOINT,
    "twocell": _kernels.VARIANT_TWOCELL,
}


class _Assembler1D:
    """Pure evaluators for one (problem, mesh, bc, variant) combination."""

    def __init__(self, problem, mesh, bc, variant):
        self.problem = problem
        self.mesh = mesh
        self.bc = bc
        self.variant = _VARIANTS[variant]
        self.dimension = mesh.j_max - 1

    # -- geometry -------------------------------------------------------------

    def mass_diag(self, t):
        h = self.mesh.cell_widths_at(t)
        return 0.5 * (h[1:] + h[:-1])

    def dsqrtmass_diag(self, t):
        h = self.mesh.cell_widths_at(t)
        hd = self.mesh.cell_width_rates_on(self.mesh.grid.interval_of(t))
        return (np.sqrt(2.0) / 4.0) * (hd[1:] + hd[:-1]) / np.sqrt(h[1:] + h[:-1])

    def _entries(self, t):
        mesh = self.mesh
        x = mesh.positions_at(t)
        xdot = mesh.speeds_at(t)
        h = np.diff(x)
        hdot = np.diff(xdot)
        xm = 0.5 * (x[:-1] + x[1:])
        a_half = np.broadcast_to(self.problem.a(xm, t), xm.shape).astype(float)
        b_half = np.broadcast_to(self.problem.b(xm, t), xm.shape).astype(float)
        c_int = np.broadcast_to(self.problem.c(x[1:-1], t), (x.size - 2,)).astype(float)
        lo, di, up = _kernels.stiffness_entries_1d(
            self.variant, np.ascontiguousarray(h), np.ascontiguousarray(hdot),
            np.ascontiguousarray(xdot), np.ascontiguousarray(a_half),
            np.ascontiguousarray(b_half), np.ascontiguousarray(c_int))
        return x, lo, di, up

    def _extrapolation_weights(self, t, x):
        """beta coefficients of u_0 = beta_l u_1 + (1-beta_l) g(x_l) (and right)."""
        xl = self.problem.xl(t)
        xr = self.problem.xr(t)
        width = xr - xl
        dl = x[1] - xl
        dr = x[-2] - xr
        if abs(dl) < 1e-12 * abs(width) or abs(dr) < 1e-12 * abs(width):
            raise DegenerateExtrapolationError(
                f"extrapolation nodes coincide with the boundary at t = {t:g}")
        return (x[0] - xl) / dl, (x[-1] - xr) / dr

    # -- system evaluators ------------------------------------------------------

    def stiffness(self, t):
        x, lo, di, up = self._entries(t)
        if self.bc is BcStrategy.MOVING_DOMAIN_EXTRAPOLATED:
            beta_l, beta_r = self._extrapolation_weights(t, x)
            di = di.copy()
            di[0] += lo[0] * beta_l
            di[-1] += up[-1] * beta_r
        return sp.diags([lo[1:], di, up[:-1]], [-1, 0, 1], format="csr")

    def load(self, t, stage=None):
        x, lo, di, up = self._entries(t)
        out = self.mass_diag(t) * np.broadcast_to(
            self.problem.f(x[1:-1], t), (self.dimension,)).astype(float)

        times, wts = boundary_sample_times(self.bc, t, stage)
        if self.bc is BcStrategy.MOVING_DOMAIN_EXTRAPOLATED:
            beta_l, beta_r = self._extrapolation_weights(t, x)
            g_l = sum(w * self.problem.g(self.problem.xl(ti), ti)
                      for ti, w in zip(times, wts))
            g_r = sum(w * self.problem.g(self.problem.xr(ti), ti)
                      for ti, w in zip(times, wts))
            out[0] += lo[0] * (1.0 - beta_l) * g_l
            out[-1] += up[-1] * (1.0 - beta_r) * g_r
        else:
            g_l = g_r = 0.0
            for ti, w in zip(times, wts):
                xi = self.mesh.positions_at(ti)
                g_l += w * self.problem.g(xi[0], ti)
                g_r += w * self.problem.g(xi[-1], ti)
            out[0] += lo[0] * g_l
            out[-1] += up[-1] * g_r
        return out

    def to_system(self):
        return SemiDiscreteSystem(
            dimension=self.dimension,
            mass_diag=self.mass_diag,
            dsqrtmass_diag=self.dsqrtmass_diag,
            stiffness=self.stiffness,
            load=self.load)


def _build(problem, mesh, bc, variant):
    if bc is BcStrategy.MOVING_DOMAIN_EXTRAPOLATED and not getattr(
            problem, "moving_domain", False):
        raise ValueError("extrapolated boundary treatment needs a moving-domain "
                         "problem descriptor (xl/xr trajectories)")
    return _Assembler1D(problem, mesh, bc, variant).to_system()


def build_conservative(problem, mesh, bc=BcStrategy.APPROX_POINTS):
    """Semi-discrete system of the conservative half-point-flux scheme."""
    return _build(problem, mesh, bc, "conservative")


def build_nonconservative_halfpoint(problem, mesh, bc=BcStrategy.APPROX_POINTS):
    """Nonconservative scheme with half-point mesh-motion fluxes.

    Entrywise identical to the conservative scheme up to roundoff; kept as
    a separately assembled route so the equivalence stays testable.
    """
    return _build(problem, mesh, bc, "halfpoint")


def build_twocell(problem, mesh, bc=BcStrategy.APPROX_POINTS):
    """Two-cell mesh-motion scheme; warns where its speed condition fails.

    The condition (xdot_j - xdot_{j-1}) <= 4 a_{j-1/2} / h_j is evaluated
    per cell at every time-grid level. Violations do not block the build:
    they mean the dissipativity certificate may fail on this mesh.
    """
    violations = []
    grid = mesh.grid
    for n in range(grid.n_steps):
        t = float(grid.levels[n])
        x = mesh.positions_at(t)
        h = np.diff(x)
        xdot = mesh.speeds_on(n)
        xm = 0.5 * (x[:-1] + x[1:])
        a_half = np.broadcast_to(problem.a(xm, t), xm.shape)
        bad = np.nonzero(np.diff(xdot) > 4.0 * a_half / h)[0]
        violations.extend((int(j) + 1, t) for j in bad)
    if violations:
        head = ", ".join(f"(j={j}, t={t:g})" for j, t in violations[:5])
        warnings.warn(
            f"two-cell speed condition violated at {len(violations)} "
            f"(cell, level) pairs: {head}...", RuntimeWarning, stacklevel=2)
    return _build(problem, mesh, bc, "twocell")


def check_coef_condition_1d(problem, mesh, t):
    """Worst margin of the discrete coefficient condition at time t.

    Returns min_j of c_j + (b_{j+1/2} - b_{j-1/2}) / (h_{j+1} + h_j);
    nonnegative means the dissipativity hypothesis on the coefficients
    holds at this time.
    """
    x = mesh.positions_at(t)
    h = np.diff(x)
    xm = 0.5 * (x[:-1] + x[1:])
    b_half = np.broadcast_to(problem.b(xm, t), xm.shape)
    c_int = np.broadcast_to(problem.c(x[1:-1], t), (x.size - 2,))
    mass = 0.5 * (h[1:] + h[:-1])
    return float(np.min(c_int + 0.5 * (b_half[1:] - b_half[:-1]) / mass))


def boundary_values(bc, problem, mesh, t, stage=None):
    """Boundary data entering the eliminated PDE rows at query time t.

    For GAUSS_POINTS / APPROX_POINTS returns the pair (u_0, u_jmax) of
    boundary values (sampled per the strategy). For the extrapolated form
    returns ((beta_l, g_l), (beta_r, g_r)) with u_0 = beta_l u_1 +
    (1 - beta_l) g_l and symmetrically on the right.
    """
    times, wts = boundary_sample_times(bc, t, stage)
    if bc is BcStrategy.MOVING_DOMAIN_EXTRAPOLATED:
        asm = _Assembler1D(problem, mesh, bc, "conservative")
        beta_l, beta_r = asm._extrapolation_weights(t, mesh.positions_at(t))
        g_l = sum(w * problem.g(problem.xl(ti), ti) for ti, w in zip(times, wts))
        g_r = sum(w * problem.g(problem.xr(ti), ti) for ti, w in zip(times, wts))
        return (beta_l, g_l), (beta_r, g_r)
    g_l = g_r = 0.0
    for ti, w in zip(times, wts):
        xi = mesh.positions_at(ti)
        g_l += w * problem.g(xi[0], ti)
        g_r += w * problem.g(xi[-1], ti)
    return g_l, g_r
