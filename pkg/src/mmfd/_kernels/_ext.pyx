# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled assembly kernels; mirrors mmfd._kernels.reference exactly."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def stiffness_entries_1d(int variant,
                         double[::1] h, double[::1] hdot, double[::1] xdot,
                         double[::1] a_half, double[::1] b_half,
                         double[::1] c_int):
    cdef Py_ssize_t jmax = h.shape[0]
    cdef Py_ssize_t n = jmax - 1
    cdef cnp.ndarray lo_arr = np.empty(n)
    cdef cnp.ndarray di_arr = np.empty(n)
    cdef cnp.ndarray up_arr = np.empty(n)
    cdef double[::1] lo = lo_arr
    cdef double[::1] di = di_arr
    cdef double[::1] up = up_arr
    cdef Py_ssize_t j
    cdef double mass, xp, xm, xc, diff_up, diff_lo

    for j in range(1, jmax):
        mass = 0.5 * (h[j] + h[j - 1])
        xp = 0.5 * (xdot[j] + xdot[j + 1])
        xm = 0.5 * (xdot[j - 1] + xdot[j])
        diff_up = a_half[j] / h[j]
        diff_lo = a_half[j - 1] / h[j - 1]
        if variant == 0:
            up[j - 1] = diff_up - 0.5 * (b_half[j] - xp)
            lo[j - 1] = diff_lo + 0.5 * (b_half[j - 1] - xm)
            di[j - 1] = (-diff_up - diff_lo - 0.5 * (hdot[j] + hdot[j - 1])
                         - mass * c_int[j - 1]
                         - 0.5 * (b_half[j] - xp) + 0.5 * (b_half[j - 1] - xm))
        elif variant == 1:
            up[j - 1] = diff_up + 0.5 * xp - 0.5 * b_half[j]
            lo[j - 1] = diff_lo - 0.5 * xm + 0.5 * b_half[j - 1]
            di[j - 1] = (-diff_up - diff_lo - 0.5 * xp + 0.5 * xm
                         - 0.5 * b_half[j] + 0.5 * b_half[j - 1]
                         - mass * c_int[j - 1])
        elif variant == 2:
            xc = xdot[j]
            up[j - 1] = diff_up + 0.5 * xc - 0.5 * b_half[j]
            lo[j - 1] = diff_lo - 0.5 * xc + 0.5 * b_half[j - 1]
            di[j - 1] = (-diff_up - diff_lo - 0.5 * b_half[j]
                         + 0.5 * b_half[j - 1] - mass * c_int[j - 1])
        else:
            raise ValueError(f"unknown 1D scheme variant {variant}")
    return lo_arr, di_arr, up_arr


def stiffness_triplets_2d(double[:, ::1] x, double[:, ::1] y,
                          double[:, ::1] xdot, double[:, ::1] ydot,
                          double[:, ::1] a_hh,
                          double[:, ::1] b1_xi, double[:, ::1] b2_xi,
                          double[:, ::1] b1_eta, double[:, ::1] b2_eta,
                          double[:, ::1] diag_int):
    cdef Py_ssize_t jmax = x.shape[0] - 1
    cdef Py_ssize_t kmax = x.shape[1] - 1
    cdef Py_ssize_t stride = jmax + 1
    cdef Py_ssize_t cap = (jmax - 1) * (kmax - 1) + 4 * jmax * (kmax - 1) \
        + 4 * (jmax - 1) * kmax + 32 * jmax * kmax
    cdef cnp.ndarray rows_arr = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray cols_arr = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray vals_arr = np.empty(cap)
    cdef cnp.int64_t[::1] rows = rows_arr
    cdef cnp.int64_t[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t n = 0
    cdef Py_ssize_t j, k, a, b, ci
    cdef double w, jxx, jxy, jhx, jhy, xd, yd
    cdef double cxx, cxy, chx, chy, cjac, scale, ca, cg, cd
    cdef double c0, c1, c2, c3
    cdef cnp.int64_t col0, col1, col2, col3, row_id

    # Diagonal: -Jdot - c*J
    for j in range(1, jmax):
        for k in range(1, kmax):
            rows[n] = k * stride + j
            cols[n] = rows[n]
            vals[n] = diag_int[j - 1, k - 1]
            n += 1

    # Convection through xi-edges (stored a=j-1 in 0..jmax-1, b=k-1).
    for a in range(jmax):
        for b in range(kmax - 1):
            jxx = 0.25 * (y[a + 1, b + 2] - y[a + 1, b] + y[a, b + 2] - y[a, b])
            jxy = -0.25 * (x[a + 1, b + 2] - x[a + 1, b] + x[a, b + 2] - x[a, b])
            xd = 0.125 * (xdot[a + 1, b] + xdot[a, b] + 2.0 * xdot[a + 1, b + 1]
                          + 2.0 * xdot[a, b + 1] + xdot[a + 1, b + 2] + xdot[a, b + 2])
            yd = 0.125 * (ydot[a + 1, b] + ydot[a, b] + 2.0 * ydot[a + 1, b + 1]
                          + 2.0 * ydot[a, b + 1] + ydot[a + 1, b + 2] + ydot[a, b + 2])
            w = jxx * (b1_xi[a, b] - xd) + jxy * (b2_xi[a, b] - yd)
            col0 = (b + 1) * stride + (a + 1)
            col1 = (b + 1) * stride + a
            if a + 1 <= jmax - 1:            # row (a+1, b+1)
                rows[n] = col0; cols[n] = col0; vals[n] = 0.5 * w; n += 1
                rows[n] = col0; cols[n] = col1; vals[n] = 0.5 * w; n += 1
            if a >= 1:                        # row (a, b+1)
                rows[n] = col1; cols[n] = col0; vals[n] = -0.5 * w; n += 1
                rows[n] = col1; cols[n] = col1; vals[n] = -0.5 * w; n += 1

    # Convection through eta-edges (stored a=j-1, b=k-1 in 0..kmax-1).
    for a in range(jmax - 1):
        for b in range(kmax):
            jhx = -0.25 * (y[a + 2, b + 1] - y[a, b + 1] + y[a + 2, b] - y[a, b])
            jhy = 0.25 * (x[a + 2, b + 1] - x[a, b + 1] + x[a + 2, b] - x[a, b])
            xd = 0.125 * (xdot[a, b + 1] + xdot[a, b] + 2.0 * xdot[a + 1, b + 1]
                          + 2.0 * xdot[a + 1, b] + xdot[a + 2, b + 1] + xdot[a + 2, b])
            yd = 0.125 * (ydot[a, b + 1] + ydot[a, b] + 2.0 * ydot[a + 1, b + 1]
                          + 2.0 * ydot[a + 1, b] + ydot[a + 2, b + 1] + ydot[a + 2, b])
            w = jhx * (b1_eta[a, b] - xd) + jhy * (b2_eta[a, b] - yd)
            col0 = (b + 1) * stride + (a + 1)
            col1 = b * stride + (a + 1)
            if b + 1 <= kmax - 1:            # row (a+1, b+1)
                rows[n] = col0; cols[n] = col0; vals[n] = 0.5 * w; n += 1
                rows[n] = col0; cols[n] = col1; vals[n] = 0.5 * w; n += 1
            if b >= 1:                        # row (a+1, b)
                rows[n] = col1; cols[n] = col0; vals[n] = -0.5 * w; n += 1
                rows[n] = col1; cols[n] = col1; vals[n] = -0.5 * w; n += 1

    # Diffusion through cells (corners a..a+1, b..b+1).
    for a in range(jmax):
        for b in range(kmax):
            cxx = 0.5 * (y[a + 1, b + 1] - y[a + 1, b] + y[a, b + 1] - y[a, b])
            cxy = -0.5 * (x[a + 1, b + 1] - x[a + 1, b] + x[a, b + 1] - x[a, b])
            chx = -0.5 * (y[a + 1, b + 1] - y[a, b + 1] + y[a + 1, b] - y[a, b])
            chy = 0.5 * (x[a + 1, b + 1] - x[a, b + 1] + x[a + 1, b] - x[a, b])
            cjac = cxx * chy - cxy * chx
            scale = a_hh[a, b] / (2.0 * cjac)
            ca = scale * (cxx * cxx + cxy * cxy)
            cg = scale * (cxx * chx + cxy * chy)
            cd = scale * (chx * chx + chy * chy)
            col0 = (b + 1) * stride + (a + 1)   # corner (a+1, b+1)
            col1 = (b + 1) * stride + a         # corner (a,   b+1)
            col2 = b * stride + (a + 1)         # corner (a+1, b)
            col3 = b * stride + a               # corner (a,   b)
            for ci in range(8):
                # ci 0..3: p1 flux rows; 4..7: p2 flux rows.
                if ci == 0 or ci == 4:
                    j = a; k = b
                elif ci == 1:
                    j = a + 1; k = b
                elif ci == 2 or ci == 5:
                    j = a; k = b + 1
                elif ci == 3 or ci == 7:
                    j = a + 1; k = b + 1
                else:                            # ci == 6
                    j = a + 1; k = b
                if j < 1 or j > jmax - 1 or k < 1 or k > kmax - 1:
                    continue
                if ci < 4:
                    c0 = ca + cg; c1 = -ca + cg; c2 = ca - cg; c3 = -ca - cg
                    w = 0.5 if (ci == 0 or ci == 2) else -0.5
                else:
                    c0 = cg + cd; c1 = -cg + cd; c2 = cg - cd; c3 = -cg - cd
                    w = 0.5 if (ci == 4 or ci == 6) else -0.5
                row_id = k * stride + j
                rows[n] = row_id; cols[n] = col0; vals[n] = w * c0; n += 1
                rows[n] = row_id; cols[n] = col1; vals[n] = w * c1; n += 1
                rows[n] = row_id; cols[n] = col2; vals[n] = w * c2; n += 1
                rows[n] = row_id; cols[n] = col3; vals[n] = w * c3; n += 1

    return rows_arr[:n], cols_arr[:n], vals_arr[:n]
