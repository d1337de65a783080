"""Two-dimensional structured moving meshes with GCL-satisfying metrics.

The half-point metric terms and speeds use the averaged central differences
that make the discrete geometric conservation law an exact identity: the
time derivative of the averaged-product nodal Jacobian equals the metric-
weighted divergence of the mesh motion for arbitrary node trajectories.
"""

from collections import namedtuple

import numpy as np

from . import _kernels
from .errors import TangledMeshError
from .timegrid import TimeGrid

HalfPointSpeeds = namedtuple(
    "HalfPointSpeeds",
    ["x_jm", "x_jp", "x_km", "x_kp", "y_jm", "y_jp", "y_km", "y_kp"])

HalfPointMetrics = namedtuple(
    "HalfPointMetrics", ["jxx_jm", "jxy_jm", "jhx_km", "jhy_km"])

HalfHalfMetrics = namedtuple(
    "HalfHalfMetrics", ["jxx", "jxy", "jhx", "jhy", "jac"])


class MovingMesh2D:
    """Node trajectories (x_jk(t), y_jk(t)) linear in time on each interval."""

    def __init__(self, grid, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 3 or x.shape != y.shape or x.shape[0] != len(grid):
            raise ValueError("coordinates must be (n_levels, j_max+1, k_max+1)")
        self.grid = grid
        self.x = x
        self.y = y
        for n, t in enumerate(grid.levels):
            jac = _kernels.nodal_jacobians(x[n], y[n])
            if np.any(jac <= 0.0):
                j, k = np.argwhere(jac <= 0.0)[0]
                raise TangledMeshError(
                    f"nonpositive nodal Jacobian {jac[j, k]:g} at node "
                    f"({j + 1}, {k + 1}), t = {t:g}",
                    index=(int(j) + 1, int(k) + 1), time=float(t))

    @classmethod
    def from_generator(cls, grid, j_max, k_max, generator):
        """Sample (x, y) = generator(xi, eta, t_n) on the unit logical grid."""
        xi = np.arange(j_max + 1) / j_max
        eta = np.arange(k_max + 1) / k_max
        xi_g, eta_g = np.meshgrid(xi, eta, indexing="ij")
        xs = np.empty((len(grid), j_max + 1, k_max + 1))
        ys = np.empty_like(xs)
        for n, t in enumerate(grid.levels):
            xs[n], ys[n] = generator(xi_g, eta_g, float(t))
        return cls(grid, xs, ys)

    @classmethod
    def from_file(cls, path, j_max, k_max, grid=None):
        """Load a trajectory file: one row per level of x y pairs.

        Pairs are in row-major order with j varying fastest (k outer).
        """
        raw = np.loadtxt(path, ndmin=2)
        n_levels = raw.shape[0]
        if raw.shape[1] != 2 * (j_max + 1) * (k_max + 1):
            raise ValueError("row length does not match (j_max+1)(k_max+1) pairs")
        if grid is None:
            grid = TimeGrid.uniform(1.0, n_levels - 1)
        pairs = raw.reshape(n_levels, k_max + 1, j_max + 1, 2)
        x = np.transpose(pairs[..., 0], (0, 2, 1))
        y = np.transpose(pairs[..., 1], (0, 2, 1))
        return cls(grid, x, y)

    def to_file(self, path):
        n_levels = len(self.grid)
        flat = np.empty((n_levels, 2 * (self.j_max + 1) * (self.k_max + 1)))
        for n in range(n_levels):
            pairs = np.stack([self.x[n].T, self.y[n].T], axis=-1)  # (k, j, 2)
            flat[n] = pairs.ravel()
        np.savetxt(path, flat, fmt="%.17g")

    @property
    def j_max(self):
        return self.x.shape[1] - 1

    @property
    def k_max(self):
        return self.x.shape[2] - 1

    # -- coordinates and speeds ----------------------------------------------

    def _interp_weights(self, t):
        n = self.grid.interval_of(t)
        t0, t1 = self.grid.levels[n], self.grid.levels[n + 1]
        return n, (t - t0) / (t1 - t0)

    def coords_at(self, t):
        n, theta = self._interp_weights(t)
        x = (1.0 - theta) * self.x[n] + theta * self.x[n + 1]
        y = (1.0 - theta) * self.y[n] + theta * self.y[n + 1]
        return x, y

    def speeds_on(self, n):
        dt = self.grid.dt(n)
        return (self.x[n + 1] - self.x[n]) / dt, (self.y[n + 1] - self.y[n]) / dt

    def speeds_at(self, t):
        return self.speeds_on(self.grid.interval_of(t))

    # -- pointwise metric quantities (per-node views of the metric arrays) ----

    def half_point_speeds(self, j, k, t):
        """Averaged mesh speeds at the four half points around node (j, k)."""
        if not (1 <= j <= self.j_max - 1 and 1 <= k <= self.k_max - 1):
            raise IndexError(f"half-point stencil at ({j}, {k}) out of range")
        xdot, ydot = self.speeds_at(t)
        xd_xi, yd_xi = _kernels.xi_edge_speeds(xdot, ydot)
        xd_eta, yd_eta = _kernels.eta_edge_speeds(xdot, ydot)
        return HalfPointSpeeds(
            x_jm=float(xd_xi[j - 1, k - 1]), x_jp=float(xd_xi[j, k - 1]),
            x_km=float(xd_eta[j - 1, k - 1]), x_kp=float(xd_eta[j - 1, k]),
            y_jm=float(yd_xi[j - 1, k - 1]), y_jp=float(yd_xi[j, k - 1]),
            y_km=float(yd_eta[j - 1, k - 1]), y_kp=float(yd_eta[j - 1, k]))

    def half_point_metrics(self, j, k, t):
        """(J xi_x, J xi_y) at (j-1/2, k) and (J eta_x, J eta_y) at (j, k-1/2)."""
        if not (1 <= j <= self.j_max and 1 <= k <= self.k_max):
            raise IndexError(f"half-point stencil at ({j}, {k}) out of range")
        x, y = self.coords_at(t)
        out = []
        if k <= self.k_max - 1:
            jxx, jxy = _kernels.xi_edge_metrics(x, y)
            out += [float(jxx[j - 1, k - 1]), float(jxy[j - 1, k - 1])]
        else:
            out += [np.nan, np.nan]
        if j <= self.j_max - 1:
            jhx, jhy = _kernels.eta_edge_metrics(x, y)
            out += [float(jhx[j - 1, k - 1]), float(jhy[j - 1, k - 1])]
        else:
            out += [np.nan, np.nan]
        return HalfPointMetrics(*out)

    def jacobian_node(self, j, k, t):
        """Averaged-product Jacobian at interior node (j, k)."""
        if not (1 <= j <= self.j_max - 1 and 1 <= k <= self.k_max - 1):
            raise IndexError(f"nodal Jacobian stencil at ({j}, {k}) out of range")
        x, y = self.coords_at(t)
        return float(_kernels.nodal_jacobians(x, y)[j - 1, k - 1])

    def jacobian_dot(self, j, k, t):
        """GCL value of dJ/dt at interior node (j, k) at time t."""
        if not (1 <= j <= self.j_max - 1 and 1 <= k <= self.k_max - 1):
            raise IndexError(f"Jacobian-rate stencil at ({j}, {k}) out of range")
        x, y = self.coords_at(t)
        xdot, ydot = self.speeds_at(t)
        return float(_kernels.nodal_jacobian_dots(x, y, xdot, ydot)[j - 1, k - 1])

    def halfhalf_metrics(self, j, k, t):
        """Metric terms and Jacobian at the cell center (j-1/2, k-1/2)."""
        if not (1 <= j <= self.j_max and 1 <= k <= self.k_max):
            raise IndexError(f"cell index ({j}, {k}) out of range")
        x, y = self.coords_at(t)
        jxx, jxy, jhx, jhy, jac = _kernels.halfhalf_metrics(x, y)
        val = float(jac[j - 1, k - 1])
        if val <= 0.0:
            raise TangledMeshError(
                f"nonpositive half-half Jacobian {val:g} at cell ({j}, {k}), t = {t:g}",
                index=(j, k), time=t)
        return HalfHalfMetrics(float(jxx[j - 1, k - 1]), float(jxy[j - 1, k - 1]),
                               float(jhx[j - 1, k - 1]), float(jhy[j - 1, k - 1]),
                               val)

    def gcl_residual(self, j, k, t):
        """|d/dt(averaged-product Jacobian) - GCL divergence| at time t.

        The product rule is applied analytically: within a step the half-
        point metrics are linear in t and their rates are the same central
        differences applied to the (constant) speeds. Zero up to roundoff
        for any trajectories.
        """
        if not (1 <= j <= self.j_max - 1 and 1 <= k <= self.k_max - 1):
            raise IndexError(f"GCL stencil at ({j}, {k}) out of range")
        x, y = self.coords_at(t)
        xdot, ydot = self.speeds_at(t)

        jxx, jxy = _kernels.xi_edge_metrics(x, y)
        jhx, jhy = _kernels.eta_edge_metrics(x, y)
        rxx, rxy = _kernels.xi_edge_metrics(xdot, ydot)
        rhx, rhy = _kernels.eta_edge_metrics(xdot, ydot)

        sxx = jxx[j, k - 1] + jxx[j - 1, k - 1]
        sxy = jxy[j, k - 1] + jxy[j - 1, k - 1]
        shx = jhx[j - 1, k] + jhx[j - 1, k - 1]
        shy = jhy[j - 1, k] + jhy[j - 1, k - 1]
        dsxx = rxx[j, k - 1] + rxx[j - 1, k - 1]
        dsxy = rxy[j, k - 1] + rxy[j - 1, k - 1]
        dshx = rhx[j - 1, k] + rhx[j - 1, k - 1]
        dshy = rhy[j - 1, k] + rhy[j - 1, k - 1]
        product_rule = 0.25 * (dsxx * shy + sxx * dshy - dsxy * shx - sxy * dshx)

        gcl = _kernels.nodal_jacobian_dots(x, y, xdot, ydot)[j - 1, k - 1]
        return abs(product_rule - float(gcl))


def static_cartesian_mesh(grid, j_max, k_max, x_extent, y_extent):
    """Uniform Cartesian mesh on [0, x_extent] x [0, y_extent], static in time."""
    def gen(xi, eta, t):
        return x_extent * xi, y_extent * eta
    return MovingMesh2D.from_generator(grid, j_max, k_max, gen)
