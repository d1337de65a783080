"""NumPy reference implementation of the per-time assembly kernels.

These functions are the fallback backend for mmfd._kernels; the compiled
extension implements the same signatures. Both produce identical stencil
entries (the compiled module exists only for speed; equality is enforced
by the backend test suite).

Index conventions (0-based):
  1D: nodes 0..J; h[i] = x[i+1]-x[i]; a_half[i], b_half[i] and
      xdot_half[i] live between nodes i and i+1; interior rows are nodes
      1..J-1 stored at r = j-1.
  2D: node arrays have shape (J+1, K+1) indexed [j, k]; xi-edges
      (j-1/2, k) for j=1..J, k=1..K-1 are stored at [j-1, k-1] in (J, K-1)
      arrays; eta-edges (j, k-1/2) for j=1..J-1, k=1..K at [j-1, k-1] in
      (J-1, K); cells (hh points (j-1/2, k-1/2)) for j,k >= 1 at
      [j-1, k-1] in (J, K). Full node ids are k*(J+1)+j (j fastest).
"""

import numpy as np

VARIANT_CONSERVATIVE = 0
VARIANT_HALFPOINT = 1
VARIANT_TWOCELL = 2


def stiffness_entries_1d(variant, h, hdot, xdot, a_half, b_half, c_int):
    """Tridiagonal stiffness entries of the 1D schemes at one time.

    Returns (lo, di, up) over interior rows j = 1..J-1: lo couples to
    u_{j-1} (lo[0] is the left-boundary coupling), up to u_{j+1} (up[-1]
    is the right-boundary coupling).
    """
    h = np.asarray(h, dtype=float)
    hdot = np.asarray(hdot, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    a_half = np.asarray(a_half, dtype=float)
    b_half = np.asarray(b_half, dtype=float)
    c_int = np.asarray(c_int, dtype=float)

    jmax = h.size
    mass = 0.5 * (h[1:] + h[:-1])
    xdot_half = 0.5 * (xdot[:-1] + xdot[1:])

    ap, am = a_half[1:], a_half[:-1]          # a_{j+1/2}, a_{j-1/2}
    bp, bm = b_half[1:], b_half[:-1]
    xp, xm = xdot_half[1:], xdot_half[:-1]
    hp, hm = h[1:], h[:-1]                    # h_{j+1}, h_j

    diff_up = ap / hp
    diff_lo = am / hm

    if variant == VARIANT_CONSERVATIVE:
        up = diff_up - 0.5 * (bp - xp)
        lo = diff_lo + 0.5 * (bm - xm)
        di = (-diff_up - diff_lo - 0.5 * (hdot[1:] + hdot[:-1])
              - mass * c_int - 0.5 * (bp - xp) + 0.5 * (bm - xm))
    elif variant == VARIANT_HALFPOINT:
        up = diff_up + 0.5 * xp - 0.5 * bp
        lo = diff_lo - 0.5 * xm + 0.5 * bm
        di = (-diff_up - diff_lo - 0.5 * xp + 0.5 * xm
              - 0.5 * bp + 0.5 * bm - mass * c_int)
    elif variant == VARIANT_TWOCELL:
        xc = xdot[1:jmax]                      # node speed at the row node
        up = diff_up + 0.5 * xc - 0.5 * bp
        lo = diff_lo - 0.5 * xc + 0.5 * bm
        di = -diff_up - diff_lo - 0.5 * bp + 0.5 * bm - mass * c_int
    else:
        raise ValueError(f"unknown 1D scheme variant {variant}")
    return lo, di, up


def xi_edge_metrics(x, y):
    """(J xi_x, J xi_y) at edges (j-1/2, k), j=1..J, k=1..K-1."""
    jxx = 0.25 * (y[1:, 2:] - y[1:, :-2] + y[:-1, 2:] - y[:-1, :-2])
    jxy = -0.25 * (x[1:, 2:] - x[1:, :-2] + x[:-1, 2:] - x[:-1, :-2])
    return jxx, jxy


def eta_edge_metrics(x, y):
    """(J eta_x, J eta_y) at edges (j, k-1/2), j=1..J-1, k=1..K."""
    jhx = -0.25 * (y[2:, 1:] - y[:-2, 1:] + y[2:, :-1] - y[:-2, :-1])
    jhy = 0.25 * (x[2:, 1:] - x[:-2, 1:] + x[2:, :-1] - x[:-2, :-1])
    return jhx, jhy


def xi_edge_speeds(xdot, ydot):
    """Eight-point averaged mesh speeds at edges (j-1/2, k)."""
    def avg(v):
        return 0.125 * (v[1:, :-2] + v[:-1, :-2] + 2.0 * v[1:, 1:-1]
                        + 2.0 * v[:-1, 1:-1] + v[1:, 2:] + v[:-1, 2:])
    return avg(xdot), avg(ydot)


def eta_edge_speeds(xdot, ydot):
    """Eight-point averaged mesh speeds at edges (j, k-1/2)."""
    def avg(v):
        return 0.125 * (v[:-2, 1:] + v[:-2, :-1] + 2.0 * v[1:-1, 1:]
                        + 2.0 * v[1:-1, :-1] + v[2:, 1:] + v[2:, :-1])
    return avg(xdot), avg(ydot)


def halfhalf_metrics(x, y):
    """(J xi_x, J xi_y, J eta_x, J eta_y, J) at cell centers (j-1/2, k-1/2)."""
    jxx = 0.5 * (y[1:, 1:] - y[1:, :-1] + y[:-1, 1:] - y[:-1, :-1])
    jxy = -0.5 * (x[1:, 1:] - x[1:, :-1] + x[:-1, 1:] - x[:-1, :-1])
    jhx = -0.5 * (y[1:, 1:] - y[:-1, 1:] + y[1:, :-1] - y[:-1, :-1])
    jhy = 0.5 * (x[1:, 1:] - x[:-1, 1:] + x[1:, :-1] - x[:-1, :-1])
    jac = jxx * jhy - jxy * jhx
    return jxx, jxy, jhx, jhy, jac


def nodal_jacobians(x, y):
    """Averaged-product Jacobian at interior nodes, shape (J-1, K-1)."""
    jxx, jxy = xi_edge_metrics(x, y)
    jhx, jhy = eta_edge_metrics(x, y)
    sxx = jxx[1:, :] + jxx[:-1, :]
    sxy = jxy[1:, :] + jxy[:-1, :]
    shx = jhx[:, 1:] + jhx[:, :-1]
    shy = jhy[:, 1:] + jhy[:, :-1]
    return 0.25 * (sxx * shy - sxy * shx)


def nodal_jacobian_dots(x, y, xdot, ydot):
    """Discrete geometric-conservation-law value of dJ/dt at interior nodes."""
    jxx, jxy = xi_edge_metrics(x, y)
    jhx, jhy = eta_edge_metrics(x, y)
    xd_xi, yd_xi = xi_edge_speeds(xdot, ydot)
    xd_eta, yd_eta = eta_edge_speeds(xdot, ydot)
    return (jxx[1:, :] * xd_xi[1:, :] - jxx[:-1, :] * xd_xi[:-1, :]
            + jxy[1:, :] * yd_xi[1:, :] - jxy[:-1, :] * yd_xi[:-1, :]
            + jhx[:, 1:] * xd_eta[:, 1:] - jhx[:, :-1] * xd_eta[:, :-1]
            + jhy[:, 1:] * yd_eta[:, 1:] - jhy[:, :-1] * yd_eta[:, :-1])


def stiffness_triplets_2d(x, y, xdot, ydot, a_hh, b1_xi, b2_xi,
                          b1_eta, b2_eta, diag_int):
    """Stencil triplets of the 2D stiffness matrix at one time.

    Rows are interior nodes, columns may include boundary nodes; both are
    full node ids k*(J+1)+j. ``diag_int`` is the precomputed diagonal
    -dJ/dt - c*J at interior nodes, shape (J-1, K-1). Duplicate triplets
    must be summed by the caller (CSR conversion does).
    """
    jmax = x.shape[0] - 1
    kmax = x.shape[1] - 1
    stride = jmax + 1

    def node_id(jj, kk):
        return (kk * stride + jj).ravel()

    rows, cols, vals = [], [], []

    def emit(row_j, row_k, col_j, col_k, value):
        rows.append(node_id(row_j, row_k))
        cols.append(node_id(col_j, col_k))
        vals.append(value.ravel())

    # Diagonal: -Jdot - c*J
    jj, kk = np.meshgrid(np.arange(1, jmax), np.arange(1, kmax), indexing="ij")
    emit(jj, kk, jj, kk, np.asarray(diag_int))

    # Convection through xi-edges (j-1/2, k): j=1..J, k=1..K-1.
    jxx, jxy = xi_edge_metrics(x, y)
    xd, yd = xi_edge_speeds(xdot, ydot)
    w1 = jxx * (b1_xi - xd) + jxy * (b2_xi - yd)
    ej, ek = np.meshgrid(np.arange(1, jmax + 1), np.arange(1, kmax), indexing="ij")
    for row_j, sign in ((ej, 0.5), (ej - 1, -0.5)):
        keep = (row_j >= 1) & (row_j <= jmax - 1)
        for col_j in (ej, ej - 1):
            emit(row_j[keep], ek[keep], col_j[keep], ek[keep],
                 sign * w1[keep])

    # Convection through eta-edges (j, k-1/2): j=1..J-1, k=1..K.
    jhx, jhy = eta_edge_metrics(x, y)
    xd, yd = eta_edge_speeds(xdot, ydot)
    w2 = jhx * (b1_eta - xd) + jhy * (b2_eta - yd)
    ej, ek = np.meshgrid(np.arange(1, jmax), np.arange(1, kmax + 1), indexing="ij")
    for row_k, sign in ((ek, 0.5), (ek - 1, -0.5)):
        keep = (row_k >= 1) & (row_k <= kmax - 1)
        for col_k in (ek, ek - 1):
            emit(ej[keep], row_k[keep], ej[keep], col_k[keep],
                 sign * w2[keep])

    # Diffusion through cells (j-1/2, k-1/2): j=1..J, k=1..K.
    cxx, cxy, chx, chy, cjac = halfhalf_metrics(x, y)
    scale = a_hh / (2.0 * cjac)
    ca = scale * (cxx * cxx + cxy * cxy)
    cg = scale * (cxx * chx + cxy * chy)
    cd = scale * (chx * chx + chy * chy)
    cj, ck = np.meshgrid(np.arange(1, jmax + 1), np.arange(1, kmax + 1), indexing="ij")
    # Corner coefficients of the two diffusion fluxes on each cell.
    corners = ((cj, ck), (cj - 1, ck), (cj, ck - 1), (cj - 1, ck - 1))
    p1_coef = (ca + cg, -ca + cg, ca - cg, -ca - cg)
    p2_coef = (cg + cd, -cg + cd, cg - cd, -cg - cd)
    # Rows receiving each cell's fluxes (with sign): see module docstring.
    p1_rows = (((cj - 1, ck - 1), 0.5), ((cj, ck - 1), -0.5),
               ((cj - 1, ck), 0.5), ((cj, ck), -0.5))
    p2_rows = (((cj - 1, ck - 1), 0.5), ((cj - 1, ck), -0.5),
               ((cj, ck - 1), 0.5), ((cj, ck), -0.5))
    for coefs, row_set in ((p1_coef, p1_rows), (p2_coef, p2_rows)):
        for (row_j, row_k), sign in row_set:
            keep = ((row_j >= 1) & (row_j <= jmax - 1)
                    & (row_k >= 1) & (row_k <= kmax - 1))
            for (col_j, col_k), coef in zip(corners, coefs):
                emit(row_j[keep], row_k[keep], col_j[keep], col_k[keep],
                     sign * coef[keep])

    return (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))
