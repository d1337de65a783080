"""Spatial discretization of 2D convection-diffusion on a moving mesh.

Central 9-point scheme for the transformed equation: convection fluxes at
integer-half/half-integer points with the GCL-compatible averaged metrics
and speeds, diffusion fluxes at half-half points, and the -dJ/dt u term
taken from the discrete geometric conservation law itself (never from
numerically differentiating the Jacobian).
"""

from functools import lru_cache

import numpy as np

from . import _kernels
from .bc import BcStrategy, boundary_sample_times
from .errors import TangledMeshError
from .linalg import from_triplets
from .system import SemiDiscreteSystem


class _Assembler2D:
    def __init__(self, problem, mesh, bc, jdot_mode):
        if bc is BcStrategy.MOVING_DOMAIN_EXTRAPOLATED:
            raise ValueError("extrapolated boundaries are one-dimensional only; "
                             "the 2D domain boundary is fixed")
        if jdot_mode not in ("gcl", "finite-difference"):
            raise ValueError(f"unknown jdot_mode {jdot_mode!r}")
        self.problem = problem
        self.mesh = mesh
        self.bc = bc
        self.jdot_mode = jdot_mode
        jmax, kmax = mesh.j_max, mesh.k_max
        self.dimension = (jmax - 1) * (kmax - 1)

        # Full node id = k*(jmax+1) + j (j fastest); interior and ring maps.
        stride = jmax + 1
        jj, kk = np.meshgrid(np.arange(jmax + 1), np.arange(kmax + 1), indexing="ij")
        on_boundary = (jj == 0) | (jj == jmax) | (kk == 0) | (kk == kmax)
        full_ids = kk * stride + jj
        self._ring_ids = np.sort(full_ids[on_boundary].ravel())
        self._ring_pos = np.full((jmax + 1) * (kmax + 1), -1, dtype=np.int64)
        self._ring_pos[self._ring_ids] = np.arange(self._ring_ids.size)
        self._interior_pos = np.full((jmax + 1) * (kmax + 1), -1, dtype=np.int64)
        interior_ids = full_ids[~on_boundary]  # [j, k] layout
        # interior index (k-1)*(jmax-1) + (j-1), i.e. j fastest
        self._interior_pos[interior_ids.ravel()] = (
            (interior_ids // stride - 1) * (jmax - 1) + (interior_ids % stride - 1)).ravel()
        self._ring_j = self._ring_ids % stride
        self._ring_k = self._ring_ids // stride

    # -- geometry -------------------------------------------------------------

    def _interior_jacobians(self, t):
        x, y = self.mesh.coords_at(t)
        return _kernels.nodal_jacobians(x, y)

    def _jdot(self, t):
        if self.jdot_mode == "gcl":
            x, y = self.mesh.coords_at(t)
            xd, yd = self.mesh.speeds_at(t)
            return _kernels.nodal_jacobian_dots(x, y, xd, yd)
        # Deliberately GCL-inconsistent variant: one-sided secant of the
        # nodal Jacobian across the containing step. Kept for demonstrating
        # that the conservation law is load-bearing for dissipativity.
        grid = self.mesh.grid
        n = grid.interval_of(t)
        j0 = _kernels.nodal_jacobians(self.mesh.x[n], self.mesh.y[n])
        j1 = _kernels.nodal_jacobians(self.mesh.x[n + 1], self.mesh.y[n + 1])
        return (j1 - j0) / grid.dt(n)

    def mass_diag(self, t):
        return self._interior_jacobians(t).ravel(order="F")

    def dsqrtmass_diag(self, t):
        jac = self._interior_jacobians(t)
        return (self._jdot(t) / (2.0 * np.sqrt(jac))).ravel(order="F")

    # -- assembly ---------------------------------------------------------------

    @lru_cache(maxsize=8)
    def _assembled(self, t):
        """(interior stiffness, boundary-column coupling matrix) at time t."""
        problem = self.problem
        x, y = self.mesh.coords_at(t)
        xdot, ydot = self.mesh.speeds_at(t)

        jac_hh = _kernels.halfhalf_metrics(x, y)[4]
        if np.any(jac_hh <= 0.0):
            a, b = np.argwhere(jac_hh <= 0.0)[0]
            raise TangledMeshError(
                f"nonpositive half-half Jacobian at cell ({a + 1}, {b + 1}), t = {t:g}",
                index=(int(a) + 1, int(b) + 1), time=t)

        def eval2(func, xs, ys):
            return np.ascontiguousarray(
                np.broadcast_to(func(xs, ys, t), xs.shape).astype(float))

        x_hh = 0.25 * (x[1:, 1:] + x[:-1, 1:] + x[1:, :-1] + x[:-1, :-1])
        y_hh = 0.25 * (y[1:, 1:] + y[:-1, 1:] + y[1:, :-1] + y[:-1, :-1])
        a_hh = eval2(problem.a, x_hh, y_hh)

        x_xi = 0.5 * (x[1:, 1:-1] + x[:-1, 1:-1])
        y_xi = 0.5 * (y[1:, 1:-1] + y[:-1, 1:-1])
        b1_xi = eval2(problem.b1, x_xi, y_xi)
        b2_xi = eval2(problem.b2, x_xi, y_xi)

        x_eta = 0.5 * (x[1:-1, 1:] + x[1:-1, :-1])
        y_eta = 0.5 * (y[1:-1, 1:] + y[1:-1, :-1])
        b1_eta = eval2(problem.b1, x_eta, y_eta)
        b2_eta = eval2(problem.b2, x_eta, y_eta)

        c_int = eval2(problem.c, x[1:-1, 1:-1], y[1:-1, 1:-1])
        diag_int = np.ascontiguousarray(
            -self._jdot(t) - c_int * self._interior_jacobians(t))

        rows, cols, vals = _kernels.stiffness_triplets_2d(
            np.ascontiguousarray(x), np.ascontiguousarray(y),
            np.ascontiguousarray(xdot), np.ascontiguousarray(ydot),
            a_hh, b1_xi, b2_xi, b1_eta, b2_eta, diag_int)

        rows = np.asarray(rows)
        cols = np.asarray(cols)
        vals = np.asarray(vals)
        on_ring = self._ring_pos[cols] >= 0
        l = self.dimension
        a_int = from_triplets(l, l,
                              self._interior_pos[rows[~on_ring]],
                              self._interior_pos[cols[~on_ring]],
                              vals[~on_ring])
        a_ring = from_triplets(l, self._ring_ids.size,
                               self._interior_pos[rows[on_ring]],
                               self._ring_pos[cols[on_ring]],
                               vals[on_ring])
        return a_int, a_ring

    def _ring_values(self, t, stage):
        times, wts = boundary_sample_times(self.bc, t, stage)
        g = np.zeros(self._ring_ids.size)
        for ti, w in zip(times, wts):
            x, y = self.mesh.coords_at(ti)
            xr = x.ravel(order="F")[self._ring_ids]
            yr = y.ravel(order="F")[self._ring_ids]
            g += w * np.broadcast_to(self.problem.g(xr, yr, ti), xr.shape)
        return g

    def stiffness(self, t):
        return self._assembled(t)[0]

    def load(self, t, stage=None):
        x, y = self.mesh.coords_at(t)
        f_int = np.broadcast_to(
            self.problem.f(x[1:-1, 1:-1], y[1:-1, 1:-1], t),
            (self.mesh.j_max - 1, self.mesh.k_max - 1)).astype(float)
        out = self.mass_diag(t) * f_int.ravel(order="F")
        a_ring = self._assembled(t)[1]
        if a_ring.nnz:
            out = out + a_ring @ self._ring_values(t, stage)
        return out

    def to_system(self):
        return SemiDiscreteSystem(
            dimension=self.dimension,
            mass_diag=self.mass_diag,
            dsqrtmass_diag=self.dsqrtmass_diag,
            stiffness=self.stiffness,
            load=self.load)


def build_system_2d(problem, mesh, bc=BcStrategy.APPROX_POINTS, jdot_mode="gcl"):
    """Semi-discrete system of the 2D central scheme on the moving mesh.

    Interior unknowns are ordered row-major with j fastest. ``jdot_mode``
    selects the value used for the -dJ/dt u term: "gcl" (the conservation-
    law divergence, the default and the dissipative choice) or
    "finite-difference" (a one-sided secant, for demonstrations only).
    """
    return _Assembler2D(problem, mesh, bc, jdot_mode).to_system()


def check_coef_condition_2d(problem, mesh, t):
    """Worst margin of the 2D discrete coefficient condition at time t.

    Central-difference analog of c + div(b)/2 >= 0, weighted by the nodal
    Jacobian; nonnegative means the dissipativity hypothesis holds.
    """
    x, y = mesh.coords_at(t)
    jxx, jxy = _kernels.xi_edge_metrics(x, y)
    jhx, jhy = _kernels.eta_edge_metrics(x, y)

    def eval2(func, xs, ys):
        return np.broadcast_to(func(xs, ys, t), xs.shape)

    x_xi = 0.5 * (x[1:, 1:-1] + x[:-1, 1:-1])
    y_xi = 0.5 * (y[1:, 1:-1] + y[:-1, 1:-1])
    b1_xi = eval2(problem.b1, x_xi, y_xi)
    b2_xi = eval2(problem.b2, x_xi, y_xi)
    x_eta = 0.5 * (x[1:-1, 1:] + x[1:-1, :-1])
    y_eta = 0.5 * (y[1:-1, 1:] + y[1:-1, :-1])
    b1_eta = eval2(problem.b1, x_eta, y_eta)
    b2_eta = eval2(problem.b2, x_eta, y_eta)
    c_int = eval2(problem.c, x[1:-1, 1:-1], y[1:-1, 1:-1])

    margin = (c_int * _kernels.nodal_jacobians(x, y)
              + 0.5 * (jxx[1:, :] * b1_xi[1:, :] - jxx[:-1, :] * b1_xi[:-1, :]
                       + jxy[1:, :] * b2_xi[1:, :] - jxy[:-1, :] * b2_xi[:-1, :])
              + 0.5 * (jhx[:, 1:] * b1_eta[:, 1:] - jhx[:, :-1] * b1_eta[:, :-1]
                       + jhy[:, 1:] * b2_eta[:, 1:] - jhy[:, :-1] * b2_eta[:, :-1]))
    return float(np.min(margin))
