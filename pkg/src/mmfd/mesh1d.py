"""One-dimensional moving meshes, piecewise linear in time."""

import numpy as np

from .errors import TangledMeshError
from .timegrid import TimeGrid


class MovingMesh1D:
    """Node trajectories x_j(t) given by positions at the time-grid levels.

    Between levels the nodes move linearly, so the mesh speed is piecewise
    constant in time; all derived quantities (cell widths, width rates,
    half-point speeds) follow from that rule. Positivity of every cell
    width at the levels implies positivity for all intermediate times.
    """

    def __init__(self, grid, positions):
        positions = np.asarray(positions, dtype=float)
        if positions.ndim != 2 or positions.shape[0] != len(grid):
            raise ValueError("positions must be (n_levels, j_max+1)")
        widths = np.diff(positions, axis=1)
        if np.any(widths <= 0.0):
            level, cell = np.argwhere(widths <= 0.0)[0]
            raise TangledMeshError(
                f"nonpositive cell width h_{cell + 1} = {widths[level, cell]:g} "
                f"at t = {grid.levels[level]:g}",
                index=int(cell) + 1, time=float(grid.levels[level]))
        self.grid = grid
        self.x = positions

    @classmethod
    def from_generator(cls, grid, j_max, generator):
        """Sample x_j(t_n) = generator(xi_j, t_n), xi_j = j/j_max in [0, 1].

        The generator's curvature within a step is deliberately discarded:
        the scheme is defined on trajectories linear in time.
        """
        xi = np.arange(j_max + 1) / j_max
        levels = grid.levels
        pos = np.empty((levels.size, j_max + 1))
        for n, t in enumerate(levels):
            pos[n] = generator(xi, float(t))
        return cls(grid, pos)

    @classmethod
    def from_file(cls, path, grid=None):
        """Load a trajectory file: one row of node positions per time level.

        Without an explicit grid the levels are taken uniform on [0, 1].
        """
        pos = np.loadtxt(path, ndmin=2)
        if grid is None:
            grid = TimeGrid.uniform(1.0, pos.shape[0] - 1)
        return cls(grid, pos)

    def to_file(self, path):
        np.savetxt(path, self.x, fmt="%.17g")

    @property
    def j_max(self):
        return self.x.shape[1] - 1

    # -- positions and speeds ------------------------------------------------

    def _interp_weights(self, t):
        n = self.grid.interval_of(t)
        t0, t1 = self.grid.levels[n], self.grid.levels[n + 1]
        theta = (t - t0) / (t1 - t0)
        return n, theta

    def positions_at(self, t):
        n, theta = self._interp_weights(t)
        return (1.0 - theta) * self.x[n] + theta * self.x[n + 1]

    def speeds_on(self, n):
        """Constant node speeds on the interval [t_n, t_{n+1}]."""
        return (self.x[n + 1] - self.x[n]) / self.grid.dt(n)

    def speeds_at(self, t):
        return self.speeds_on(self.grid.interval_of(t))

    def position(self, j, t):
        if not 0 <= j <= self.j_max:
            raise IndexError(f"node index {j} outside [0, {self.j_max}]")
        return float(self.positions_at(t)[j])

    def speed(self, j, n):
        if not 0 <= j <= self.j_max:
            raise IndexError(f"node index {j} outside [0, {self.j_max}]")
        return float(self.speeds_on(n)[j])

    def half_point_speed(self, j, n):
        """(xdot_j + xdot_{j+1}) / 2 on interval n, for j = 0..j_max-1."""
        s = self.speeds_on(n)
        return 0.5 * (s[j] + s[j + 1])

    # -- cell quantities -----------------------------------------------------

    def cell_widths_at(self, t):
        h = np.diff(self.positions_at(t))
        if np.any(h <= 0.0):
            cell = int(np.argmin(h))
            raise TangledMeshError(
                f"nonpositive cell width h_{cell + 1} = {h[cell]:g} at t = {t:g}",
                index=cell + 1, time=t)
        return h

    def cell_width(self, j, t):
        """h_j(t) = x_j(t) - x_{j-1}(t) for j = 1..j_max."""
        if not 1 <= j <= self.j_max:
            raise IndexError(f"cell index {j} outside [1, {self.j_max}]")
        return float(self.cell_widths_at(t)[j - 1])

    def cell_width_rates_on(self, n):
        return np.diff(self.speeds_on(n))

    def cell_width_rate(self, j, n):
        """hdot_j on interval n, constant in time."""
        if not 1 <= j <= self.j_max:
            raise IndexError(f"cell index {j} outside [1, {self.j_max}]")
        return float(self.cell_width_rates_on(n)[j - 1])


def static_uniform_mesh(grid, j_max, x_left, x_right):
    """Uniform mesh on a fixed interval, constant in time."""
    row = np.linspace(x_left, x_right, j_max + 1)
    return MovingMesh1D(grid, np.tile(row, (len(grid), 1)))
