"""Acceptance criteria, one test per criterion.

Each test prints one PASS/FAIL line (visible with pytest -s or on failure).
Conventions pinned here, used consistently across criteria:

  * "observed order" of a refinement sweep is the order between the two
    finest levels, log(e_{n-1}/e_n)/log 2 (the quantity the error report
    tabulates per row); the full per-pair sequence is printed alongside.
  * Coupled sweeps use dt = (pi/J)^(1/m) exactly; the number of steps is
    ceil(1/dt), so runs cover [0, N*dt] with T >= 1 and the step size is
    exactly the rule's value.
  * Stability stress runs integrate at least three steps per dt.
"""

import math

import numpy as np
import pytest

from mmfd import (
    RunConfig,
    TimeGrid,
    build_conservative,
    build_nonconservative_halfpoint,
    build_scheme,
    build_system_2d,
    certify_dissipativity,
    convergence,
    example_5_1,
    example_5_3,
    homogeneous_stress_variant,
    integrate,
    run,
    stability_stress,
)
from mmfd.integrator import certificate_tolerance
from mmfd.system import SemiDiscreteSystem

from test_mesh2d import random_valid_mesh


def report(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:>2} {name}: {status} {detail}")
    return ok


def pair_orders(errors):
    return [math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)]


def coupled_sweep(example, m, j_list, bc="approx", omega=2 * math.pi,
                  dt_rule=None, scheme=None):
    errors = []
    for j in j_list:
        dt = dt_rule(j, m) if dt_rule else (math.pi / j) ** (1.0 / m)
        cfg = RunConfig(example=example, omega=omega, m=m, j_max=j, dt=dt,
                        bc=bc, scheme=scheme or ("2d" if example == "5.3"
                                                 else "conservative"))
        errors.append(run(cfg).max_error)
    return errors


STABILITY_CASES = [
    ("5.1-sin", 2 * math.pi, 40, "conservative"),
    ("5.1-sin", 20 * math.pi, 40, "conservative"),
    ("5.3", 2 * math.pi, 20, "2d"),
]


def test_criterion_1_unconditional_stability():
    failures = []
    for example, omega, j, scheme in STABILITY_CASES:
        for m in (1, 2, 3):
            cfg = RunConfig(example=example, omega=omega, m=m, j_max=j,
                            scheme=scheme)
            rows = stability_stress(cfg, [1e-2, 1e-1, 1.0, 10.0])
            for row in rows:
                if not row["energy_monotone"]:
                    failures.append((example, omega, m, row["dt"]))
    ok = report(1, "unconditional stability", not failures,
                f"violations={failures}" if failures else
                "36 homogeneous runs, energy nonincreasing at every step")
    assert ok


def test_criterion_2_dissipativity_certificate():
    worst = -np.inf
    ok = True
    for example, omega, j, scheme in STABILITY_CASES:
        for dt in (1e-2, 1e-1, 1.0, 10.0):
            t_end = max(1.0, 3 * dt)
            n = max(3, math.ceil(round(t_end / dt, 12)))
            grid = TimeGrid.uniform(n * dt, n)
            if example == "5.3":
                problem, _, gen = example_5_3(omega)
                mesh = gen(grid, j, j)
                sys = build_system_2d(homogeneous_stress_variant(problem), mesh)
            else:
                problem, _, gen = example_5_1(omega)
                mesh = gen(grid, j)
                sys = build_conservative(homogeneous_stress_variant(problem), mesh)
            times = np.linspace(0.0, grid.t_end, 20)
            tol = certificate_tolerance(sys, times)
            top = max(certify_dissipativity(sys, times))
            worst = max(worst, top / tol)
            ok = ok and top <= tol
    assert report(2, "dissipativity certificate", ok,
                  f"worst eig / (1e-9*|A|_max) = {worst:.2e}")


def test_criterion_3_gcl_identity():
    def worst_residual(mesh):
        worst = 0.0
        for n in range(mesh.grid.n_steps):
            t0 = float(mesh.grid.levels[n])
            dt = mesh.grid.dt(n)
            for t in (t0 + 0.5 * dt, t0 + 0.9 * dt):
                for jj in range(1, mesh.j_max):
                    for kk in range(1, mesh.k_max):
                        r = mesh.gcl_residual(jj, kk, t)
                        bound = 1e-12 * (1.0 + abs(mesh.jacobian_dot(jj, kk, t)))
                        worst = max(worst, r / bound)
        return worst

    _, _, gen = example_5_3(2 * math.pi)
    w1 = worst_residual(gen(TimeGrid.uniform(1.0, 20), 20, 20))
    w2 = worst_residual(random_valid_mesh(seed=5, j_max=8, k_max=7, n_steps=6))
    ok = w1 <= 1.0 and w2 <= 1.0
    assert report(3, "GCL identity", ok,
                  f"worst residual/bound: example={w1:.2e} random={w2:.2e}")


def test_criterion_4_scheme_equivalence():
    rng = np.random.default_rng(4)
    ok = True
    worst = 0.0
    for omega in (2 * math.pi, 20 * math.pi):
        problem, _, gen = example_5_1(omega)
        mesh = gen(TimeGrid.uniform(1.0, 50), 40)
        s2 = build_conservative(problem, mesh)
        s3 = build_nonconservative_halfpoint(problem, mesh)
        for t in rng.uniform(0.0, 1.0, 10):
            a2 = s2.stiffness(float(t))
            a3 = s3.stiffness(float(t))
            scale = np.max(np.abs(a2.data))
            diff = np.max(np.abs((a2 - a3).toarray())) / scale
            worst = max(worst, diff)
            ok = ok and diff <= 1e-13
    assert report(4, "conservative/nonconservative equivalence", ok,
                  f"worst entrywise diff = {worst:.2e} * |A|_max")


def test_criterion_5_temporal_order_m1():
    cfg = RunConfig(example="5.1-sin", m=1, j_max=1000, dt=0.2)
    rep = convergence(cfg, "temporal", 4)
    errors = [r["max_error"] for r in rep.rows]
    orders = pair_orders(errors)
    ok = 1.8 <= orders[-1] <= 2.2
    assert report(5, "temporal order (m=1, J=1000)", ok,
                  f"orders={[f'{o:.2f}' for o in orders]}")


def test_criterion_6_coupled_convergence():
    results = {}
    ok = True
    for m in (1, 2, 3):
        errors = coupled_sweep("5.1-sin", m, [20, 40, 80, 160])
        orders = pair_orders(errors)
        results[m] = orders
        ok = ok and 1.7 <= orders[-1] <= 2.3
    assert report(6, "coupled convergence m=1,2,3", ok,
                  " ".join(f"m={m}:{[f'{o:.2f}' for o in v]}"
                           for m, v in results.items()))


def test_criterion_7_boundary_condition_study():
    # No mesh-size list is mandated; this uses criterion 6's list. Known red,
    # left failing deliberately: the two strategies differ only in the time
    # sampling of the boundary data, which perturbs the interior solution at
    # O(dt^{m+1}) -- their interior errors are nearly identical at every mesh
    # size. The first-order degradation of Gauss-time boundary sampling lives
    # at the boundary nodes (whose carried values drift at O(dt^m) per step),
    # and the required error measure covers interior nodes only, so no mesh
    # range can separate the two strategies into the two bands below.
    results = {}
    ok = True
    for m in (2, 3):
        for bc, lo, hi in (("gauss", 0.7, 1.3), ("approx", 1.7, 2.3)):
            errors = coupled_sweep("5.1-cos", m, [20, 40, 80, 160], bc=bc)
            orders = pair_orders(errors)
            results[(m, bc)] = orders[-1]
            ok = ok and lo <= orders[-1] <= hi
    assert report(7, "boundary-condition study", ok,
                  " ".join(f"m={m},{bc}:{o:.2f}" for (m, bc), o in results.items()))


def test_criterion_8_moving_domain():
    ok = True
    details = []
    # omega = 2*pi with the plain coupled rule
    errors = coupled_sweep("5.2", 1, [20, 40, 80, 160], bc="extrap")
    orders = pair_orders(errors)
    ok = ok and 1.7 <= orders[-1] <= 2.3
    details.append(f"w=2pi orders={[f'{o:.2f}' for o in orders]}")
    # omega = 20*pi with the fast-boundary rule dt = 0.1*pi/J; the plain rule
    # leaves the boundary motion unresolved (several radians per step) and
    # the errors do not converge.
    errors = coupled_sweep("5.2", 1, [40, 80, 160, 320], bc="extrap",
                           omega=20 * math.pi,
                           dt_rule=lambda j, m: 0.1 * math.pi / j)
    orders = pair_orders(errors)
    ok = ok and 1.7 <= orders[-1] <= 2.3
    details.append(f"w=20pi orders={[f'{o:.2f}' for o in orders]}")

    # homogeneous stress twins of the omega=20*pi runs above: bounded and
    # per-step monotone at every level
    stress_flags = []
    for j in (40, 80, 160, 320):
        cfg = RunConfig(example="5.2", omega=20 * math.pi, m=1, j_max=j)
        row = stability_stress(cfg, [0.1 * math.pi / j])[0]
        stress_flags.append((j, row["energy_bounded"], row["energy_monotone"]))
    ok = ok and all(b and m for _, b, m in stress_flags)
    details.append(f"stress(bounded,monotone)={stress_flags}")

    # probes far outside the runs' step sizes: boundedness (the substantive
    # stability claim) holds for arbitrarily large dt; per-step monotonicity
    # is not asserted there -- at dt where the linearized mesh misses the
    # fast boundary by up to a cell, the extrapolation weight passes 1/2 and
    # the dissipation structure carries no guarantee. Reported only.
    cfg = RunConfig(example="5.2", omega=20 * math.pi, m=1, j_max=40)
    rows = stability_stress(cfg, [1e-2, 1e-1, 1.0, 10.0])
    ok = ok and all(r["energy_bounded"] for r in rows)
    details.append(f"probe dt monotone={[(r['dt'], r['energy_monotone']) for r in rows]}")
    assert report(8, "moving domain", ok, "; ".join(details))


def test_criterion_9_2d_convergence():
    results = {}
    ok = True
    for m in (1, 2):
        errors = coupled_sweep("5.3", m, [10, 20, 40, 80], scheme="2d")
        orders = pair_orders(errors)
        results[m] = orders
        ok = ok and 1.7 <= orders[-1] <= 2.3
    assert report(9, "2D coupled convergence m=1,2", ok,
                  " ".join(f"m={m}:{[f'{o:.2f}' for o in v]}"
                           for m, v in results.items()))


def test_criterion_10_collocation_order_2m():
    import scipy.sparse as sp

    mass = lambda t: (2 + math.sin(t)) ** 2
    dsq = lambda t: math.cos(t)
    stiff = lambda t: -(3 + math.cos(5 * t))
    u_exact = lambda t: math.exp(math.sin(2 * t))
    du = lambda t: 2 * math.cos(2 * t) * math.exp(math.sin(2 * t))
    load = lambda t: mass(t) * du(t) - stiff(t) * u_exact(t)
    sys = SemiDiscreteSystem(
        dimension=1,
        mass_diag=lambda t: np.array([mass(t)]),
        dsqrtmass_diag=lambda t: np.array([dsq(t)]),
        stiffness=lambda t: sp.csr_matrix([[stiff(t)]]),
        load=lambda t, stage=None: np.array([load(t)]))

    ok = True
    details = []
    for m in (1, 2, 3):
        errs = []
        for n_steps in (4, 8, 16):
            grid = TimeGrid.uniform(2.0, n_steps)
            hist = integrate(sys, grid, build_scheme(m), np.array([u_exact(0.0)]))
            errs.append(abs(hist.u[-1][0] - u_exact(2.0)))
        order = math.log2(errs[-2] / errs[-1])
        details.append(f"m={m}:{order:.2f}")
        ok = ok and order >= 2 * m - 0.2
    assert report(10, "collocation temporal order 2m", ok, " ".join(details))
