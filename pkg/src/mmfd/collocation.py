"""Gauss-Legendre quadrature on (0, 1) and the collocation scheme tables.

The time integrator represents the solution on each step by its values at
m+1 approximation nodes (0, the m-1 interior Gauss points, 1) and enforces
the ODE at the m Gauss points. This module provides the nodes, the
quadrature weights, and the Lagrange evaluation/differentiation matrices
connecting the two node sets.
"""

import numpy as np

from .errors import InvalidOrderError

MAX_ORDER = 10


def _legendre_and_derivative(n, x):
    """Value and derivative of the Legendre polynomial P_n on (-1, 1)."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_nodes(m):
    """m-point Gauss-Legendre nodes and weights on (0, 1).

    Nodes are the roots of the Legendre polynomial P_m, found by Newton
    iteration from the eigenvalues of the Jacobi companion matrix and
    mapped to (0, 1). The rule integrates polynomials of degree <= 2m-1
    exactly; the weights are positive and sum to one.
    """
    if not isinstance(m, (int, np.integer)) or m < 1 or m > MAX_ORDER:
        raise InvalidOrderError(f"order m must be an integer in [1, {MAX_ORDER}], got {m!r}")
    m = int(m)
    if m == 1:
        return np.array([0.5]), np.array([1.0])

    # Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix
    # give the nodes on (-1, 1); used here only as initial guesses.
    k = np.arange(1, m)
    beta = k / np.sqrt(4.0 * k * k - 1.0)
    x = np.linalg.eigvalsh(np.diag(beta, 1) + np.diag(beta, -1))

    for _ in range(100):
        p, dp = _legendre_and_derivative(m, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre_and_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    return nodes, weights


def lagrange_eval(nodes, points):
    """Matrix L with L[i, k] = l_k(points[i]) for the basis on ``nodes``."""
    nodes = np.asarray(nodes, dtype=float)
    points = np.asarray(points, dtype=float)
    n = nodes.size
    out = np.ones((points.size, n))
    for k in range(n):
        for i in range(n):
            if i == k:
                continue
            out[:, k] *= (points - nodes[i]) / (nodes[k] - nodes[i])
    return out


def lagrange_diff(nodes, points):
    """Matrix D with D[i, k] = l_k'(points[i]) for the basis on ``nodes``.

    Uses the product-rule sum directly, which stays finite even when an
    evaluation point coincides with a node.
    """
    nodes = np.asarray(nodes, dtype=float)
    points = np.asarray(points, dtype=float)
    n = nodes.size
    out = np.zeros((points.size, n))
    for k in range(n):
        for i in range(n):
            if i == k:
                continue
            term = np.full(points.size, 1.0 / (nodes[k] - nodes[i]))
            for p in range(n):
                if p == k or p == i:
                    continue
                term *= (points - nodes[p]) / (nodes[k] - nodes[p])
            out[:, k] += term
    return out


class CollocationScheme:
    """Tables for the m-point Gauss collocation step.

    Attributes
    ----------
    m : int
        Number of collocation points.
    rho : (m,) ndarray
        Gauss-Legendre points in (0, 1) where the ODE is enforced.
    weights : (m,) ndarray
        Quadrature weights associated with ``rho``.
    rho_tilde : (m+1,) ndarray
        Approximation nodes: 0, the (m-1)-point Gauss nodes, 1.
    L : (m, m+1) ndarray
        L[j, k] = l_k(rho[j]) for the Lagrange basis on ``rho_tilde``.
    D : (m, m+1) ndarray
        D[j, k] = l_k'(rho[j]) for the same basis.
    """

    def __init__(self, m):
        rho, weights = gauss_nodes(m)
        if m == 1:
            interior = np.empty(0)
        else:
            interior, _ = gauss_nodes(m - 1)
        rho_tilde = np.concatenate(([0.0], interior, [1.0]))

        self.m = int(m)
        self.rho = rho
        self.weights = weights
        self.rho_tilde = rho_tilde
        self.L = lagrange_eval(rho_tilde, rho)
        self.D = lagrange_diff(rho_tilde, rho)

    def stage_times(self, t_start, dt):
        """Collocation times t_n + rho_j * dt of the step [t_n, t_n + dt]."""
        return t_start + self.rho * dt

    def approx_times(self, t_start, dt):
        """Approximation times t_n + rho_tilde_k * dt of the step."""
        return t_start + self.rho_tilde * dt

    def __repr__(self):
        return f"CollocationScheme(m={self.m})"


def build_scheme(m):
    """Construct the collocation tables for order parameter m in [1, 10]."""
    return CollocationScheme(m)
