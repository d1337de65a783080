"""Problem descriptors and the built-in manufactured-solution examples.

Each example fixes coefficients, an exact solution, the source term that
makes the exact solution solve the PDE (derived by hand, cross-validated
against a finite-difference residual oracle in the test suite), and a
moving-mesh generator.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .mesh1d import MovingMesh1D
from .mesh2d import MovingMesh2D

PI = math.pi


@dataclass(frozen=True)
class Problem1D:
    """u_t + (b u)_x + c u = (a u_x)_x + f on (xl(t), xr(t)), Dirichlet g."""

    a: Callable
    b: Callable
    c: Callable
    f: Callable
    g: Callable
    u0: Callable
    xl: Callable
    xr: Callable
    moving_domain: bool = False
    homogeneous: bool = False  # f == 0 and g == 0 (declared, not inferred)


@dataclass(frozen=True)
class Problem2D:
    """u_t + div(u b) + c u = div(a grad u) + f on a fixed rectangle."""

    a: Callable
    b1: Callable
    b2: Callable
    c: Callable
    f: Callable
    g: Callable
    u0: Callable
    extent: tuple = (PI, PI)
    homogeneous: bool = False


@dataclass(frozen=True)
class ExactSolution1D:
    u: Callable  # u(x, t)


@dataclass(frozen=True)
class ExactSolution2D:
    u: Callable  # u(x, y, t)


def _zero(*args):
    return 0.0


def _one(*args):
    return 1.0


def homogeneous_stress_variant(problem):
    """The stability-stress twin of a problem: f and g zeroed, u0 kept."""
    return replace(problem, f=_zero, g=_zero, homogeneous=True)


# -- Example catalog ----------------------------------------------------------


def example_5_1(omega, variant="sin"):
    """Heat equation on (0, pi) with an oscillating interior mesh.

    The exact solution is (2 + sin(pi t)) sin(x) ("sin" variant, with
    homogeneous boundary data) or (2 + sin(pi t)) cos(x) ("cos" variant,
    nonhomogeneous data, used for the boundary-condition study). Mesh nodes
    follow x_j(t) = j pi/J + sin(2 j pi/J) sin(omega t)/4.
    """
    if variant == "sin":
        def u(x, t):
            return (2.0 + np.sin(PI * t)) * np.sin(x)

        def f(x, t):
            return (PI * np.cos(PI * t) + 2.0 + np.sin(PI * t)) * np.sin(x)

        g = _zero
    elif variant == "cos":
        def u(x, t):
            return (2.0 + np.sin(PI * t)) * np.cos(x)

        def f(x, t):
            return (PI * np.cos(PI * t) + 2.0 + np.sin(PI * t)) * np.cos(x)

        def g(x, t):
            return (2.0 + np.sin(PI * t)) * np.cos(x)
    else:
        raise ValueError(f"unknown variant {variant!r}")

    problem = Problem1D(
        a=_one, b=_zero, c=_zero, f=f, g=g,
        u0=lambda x: u(x, 0.0),
        xl=lambda t: 0.0, xr=lambda t: PI)
    exact = ExactSolution1D(u=u)

    def mesh_gen(grid, j_max):
        def gen(xi, t):
            return PI * xi + 0.25 * np.sin(2.0 * PI * xi) * np.sin(omega * t)
        return MovingMesh1D.from_generator(grid, j_max, gen)

    return problem, exact, mesh_gen


def example_5_2(omega):
    """Heat equation on the moving interval (pi sin(wt)/3, pi - pi sin(wt)/3).

    The exact solution vanishes on the true boundary, so the boundary data
    is identically zero; the mesh is uniform in the reference coordinate
    between the moving endpoints. Requires the extrapolated boundary
    treatment since mesh endpoints stray from the boundary inside steps.
    """
    def xl(t):
        return (PI / 3.0) * math.sin(omega * t)

    def xr(t):
        return PI - (PI / 3.0) * math.sin(omega * t)

    def u(x, t):
        w = xr(t) - xl(t)
        return np.sin(PI * (x - xl(t)) / w) * (2.0 + np.sin(PI * t))

    def f(x, t):
        s = 2.0 + math.sin(PI * t)
        w = xr(t) - xl(t)
        xl_dot = (PI / 3.0) * omega * math.cos(omega * t)
        w_dot = -2.0 * xl_dot
        theta = PI * (x - xl(t)) / w
        theta_t = -PI * xl_dot / w - theta * w_dot / w
        return (s * np.cos(theta) * theta_t
                + PI * math.cos(PI * t) * np.sin(theta)
                + s * np.sin(theta) * (PI / w) ** 2)

    problem = Problem1D(
        a=_one, b=_zero, c=_zero, f=f, g=_zero,
        u0=lambda x: u(x, 0.0),
        xl=xl, xr=xr, moving_domain=True)
    exact = ExactSolution1D(u=u)

    def mesh_gen(grid, j_max):
        def gen(xi, t):
            return xl(t) + xi * (xr(t) - xl(t))
        return MovingMesh1D.from_generator(grid, j_max, gen)

    return problem, exact, mesh_gen


def example_5_3(omega):
    """2D heat equation on (0, pi)^2 with a swirling interior mesh.

    Exact solution (2 + sin(pi t)) sin(x) sin(y); the mesh displaces both
    coordinates by 0.2 sin(2 xi) sin(2 eta) sin(omega t), which keeps the
    map invertible.
    """
    def u(x, y, t):
        return (2.0 + np.sin(PI * t)) * np.sin(x) * np.sin(y)

    def f(x, y, t):
        return ((PI * np.cos(PI * t) + 2.0 * (2.0 + np.sin(PI * t)))
                * np.sin(x) * np.sin(y))

    problem = Problem2D(
        a=_one, b1=_zero, b2=_zero, c=_zero, f=f, g=_zero,
        u0=lambda x, y: u(x, y, 0.0))
    exact = ExactSolution2D(u=u)

    def mesh_gen(grid, j_max, k_max):
        def gen(xi, eta, t):
            xs = PI * xi
            ys = PI * eta
            d = 0.2 * np.sin(2.0 * xs) * np.sin(2.0 * ys) * np.sin(omega * t)
            return xs + d, ys + d
        return MovingMesh2D.from_generator(grid, j_max, k_max, gen)

    return problem, exact, mesh_gen


EXAMPLES = {
    "5.1-sin": lambda omega: example_5_1(omega, "sin"),
    "5.1-cos": lambda omega: example_5_1(omega, "cos"),
    "5.2": example_5_2,
    "5.3": example_5_3,
}


# -- Error measurement ---------------------------------------------------------


def max_error(history, exact, mesh):
    """Max-norm error over all interior nodes and all levels n >= 1."""
    worst = 0.0
    for n in range(1, len(history.grid)):
        t = float(history.grid.levels[n])
        u_num = history.u[n]
        if isinstance(mesh, MovingMesh2D):
            x = mesh.x[n][1:-1, 1:-1].ravel(order="F")
            y = mesh.y[n][1:-1, 1:-1].ravel(order="F")
            u_ref = np.broadcast_to(exact.u(x, y, t), x.shape)
        else:
            x = mesh.x[n][1:-1]
            u_ref = np.broadcast_to(exact.u(x, t), x.shape)
        worst = max(worst, float(np.max(np.abs(u_num - u_ref))))
    return worst
