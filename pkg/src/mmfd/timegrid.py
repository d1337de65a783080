"""Partition of the time interval [0, T]."""

import numpy as np


class TimeGrid:
    """A strictly increasing partition t_0 < t_1 < ... < t_N of [0, T].

    Mesh trajectories are piecewise linear on the subintervals of this grid,
    so the grid is shared between meshes and the time integrator.
    """

    def __init__(self, levels):
        levels = np.asarray(levels, dtype=float)
        if levels.ndim != 1 or levels.size < 2:
            raise ValueError("time grid needs at least two levels")
        if np.any(np.diff(levels) <= 0.0):
            raise ValueError("time grid levels must be strictly increasing")
        self.levels = levels

    @classmethod
    def uniform(cls, t_end, n_steps, t_start=0.0):
        if n_steps < 1:
            raise ValueError("need at least one step")
        return cls(np.linspace(t_start, t_end, n_steps + 1))

    @property
    def n_steps(self):
        return self.levels.size - 1

    @property
    def t_end(self):
        return float(self.levels[-1])

    def dt(self, n):
        return float(self.levels[n + 1] - self.levels[n])

    def interval_of(self, t):
        """Index n of the subinterval [t_n, t_{n+1}] containing t.

        Right-continuous at interior levels; t = t_N maps to the last
        interval. Mesh speeds are piecewise constant with jumps at the
        levels, so the convention matters only for queries exactly at t_n.
        """
        if t < self.levels[0] - 1e-12 or t > self.levels[-1] + 1e-12:
            raise ValueError(f"time {t} outside grid range "
                             f"[{self.levels[0]}, {self.levels[-1]}]")
        n = int(np.searchsorted(self.levels, t, side="right")) - 1
        return min(max(n, 0), self.n_steps - 1)

    def __len__(self):
        return self.levels.size

    def __repr__(self):
        return (f"TimeGrid({self.levels[0]:g}..{self.levels[-1]:g}, "
                f"{self.n_steps} steps)")
