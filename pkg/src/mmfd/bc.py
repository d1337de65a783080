"""Dirichlet boundary-condition strategies for the collocation stepper.

The boundary unknowns never enter the algebraic system; their influence is
folded into the load vector (and, for the extrapolated moving-domain form,
into the first/last stiffness rows). What varies between strategies is the
time sampling of the boundary data:

  GAUSS_POINTS      g is sampled at the collocation (Gauss) times. Cheap,
                    but never enforces the data at the step endpoints, which
                    degrades nonhomogeneous problems to first order.
  APPROX_POINTS     g is enforced at the approximation times; the value
                    entering a PDE row collocated at a Gauss time is the
                    Lagrange interpolant through those samples. The last
                    approximation time is the step endpoint. Default.
  MOVING_DOMAIN_EXTRAPOLATED
                    For domains whose endpoints move: the first mesh node
                    generally strays from the true boundary inside a step,
                    so the boundary value is transferred to the mesh
                    endpoint by linear extrapolation through the first
                    interior node, coupling u_0 to u_1.
"""

import enum

import numpy as np


class BcStrategy(enum.Enum):
    GAUSS_POINTS = "gauss"
    APPROX_POINTS = "approx"
    MOVING_DOMAIN_EXTRAPOLATED = "extrap"


def boundary_sample_times(bc, t, stage):
    """Times and weights defining the boundary value used at query time t.

    Returns (times, weights) such that the boundary datum entering a PDE
    row at t is sum_i weights[i] * g(., times[i]). Without a stage context
    (or under GAUSS_POINTS) the sampling is pointwise at t.
    """
    if bc is BcStrategy.GAUSS_POINTS or stage is None:
        return np.array([t]), np.array([1.0])
    times = stage.scheme.approx_times(stage.t_start, stage.dt)
    return times, stage.scheme.L[stage.stage]
