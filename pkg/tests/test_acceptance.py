"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every tolerance is pinned here; runtimes are asserted against the stated
desk-scale budgets (generous for this implementation, which runs each
criterion in a fraction of its budget).
"""

import time

import numpy as np

from volpot import (Modulus, disk, get_preset, helmholtz_fundamental,
                    holder_seminorm, integral_functional_I,
                    laplace_fundamental, laplacian, helmholtz_modified,
                    make_ball, negative_density, subtracted_integral_G,
                    volume_potential, volume_potential_hessian,
                    volume_potential_negative)
from volpot.verify import (check_integration_by_parts, check_maximal_bound,
                           check_pde_identity, check_sphere_residue,
                           check_transmission, check_derivative_recursion,
                           modulus_experiment)

import oracles

FS2 = laplace_fundamental(2)
DISK = disk()
ONE = get_preset("one")
X1 = get_preset("x1")
X1SQ = get_preset("x1sq")


def _zero(y):
    return np.zeros(np.asarray(y).shape[0])


def _report(num, name, passed, detail, runtime, budget):
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {num:02d} {name}: {status} ({detail}, "
          f"{runtime:.1f}s / budget {budget:.0f}s)")
    assert passed, f"criterion {num} ({name}): {detail}"
    assert runtime < budget, f"criterion {num} exceeded its runtime budget"


def test_01_closed_form_disk_potentials():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    probes = [np.zeros(2)]
    for r in (0.15, 0.4, 0.65, 0.9):
        for t in rng.uniform(0.0, 2.0 * np.pi, size=3):
            probes.append(r * np.array([np.cos(t), np.sin(t)]))
    for r in (1.2, 1.9, 3.0, 7.0):
        for t in rng.uniform(0.0, 2.0 * np.pi, size=2):
            probes.append(r * np.array([np.cos(t), np.sin(t)]))
    assert len(probes) == 21
    worst = 0.0
    for x in probes:
        r = np.linalg.norm(x)
        exact = (r * r - 1.0) / 4.0 if r < 1.0 else np.log(r) / 2.0
        val = volume_potential(FS2, DISK, ONE, x, 64)
        worst = max(worst, abs(val - exact))
    dt = time.perf_counter() - t0
    _report(1, "closed_form_disk", worst <= 1e-6, f"max_err={worst:.2e}",
            dt, 5.0)


def test_02_ball_center_value():
    t0 = time.perf_counter()
    fs3 = laplace_fundamental(3)
    ball = make_ball(3, [0.0, 0.0, 0.0], 1.0)
    val = volume_potential(fs3, ball, ONE, np.zeros(3), 48)
    err = abs(val - (-0.5))
    dt = time.perf_counter() - t0
    _report(2, "ball_center_value", err <= 1e-5, f"err={err:.2e}", dt, 20.0)


def test_03_pde_identity_bump():
    t0 = time.perf_counter()
    bump = get_preset("bump")
    grid = np.array([[x, y] for x in (-0.4, 0.0, 0.4)
                     for y in (-0.4, 0.0, 0.4)])
    rep_lap = check_pde_identity(FS2, laplacian(2), DISK, bump, grid,
                                 h=8e-3, N=64, tol=1e-3)
    fsh = helmholtz_fundamental(2, 1.0)
    rep_mh = check_pde_identity(fsh, helmholtz_modified(2, 1.0), DISK, bump,
                                grid, h=8e-3, N=64, tol=1e-3)
    dt = time.perf_counter() - t0
    detail = (f"laplace={rep_lap.observed[0][1]:.2e} "
              f"helmholtz={rep_mh.observed[0][1]:.2e}")
    _report(3, "pde_identity", rep_lap.passed and rep_mh.passed, detail,
            dt, 30.0)


def test_04_transmission():
    t0 = time.perf_counter()
    rep_classical = check_transmission(FS2, DISK, ("volume", ONE),
                                       n_samples=32, N=64, tol=1e-4)
    nd = negative_density(DISK, (_zero, X1, _zero), 1.0)
    rep_negative = check_transmission(FS2, DISK, ("negative", nd),
                                      n_samples=32, N=64, tol=1e-4)
    dt = time.perf_counter() - t0
    detail = (f"classical={rep_classical.observed[0][1]:.2e} "
              f"negative={rep_negative.observed[0][1]:.2e}")
    _report(4, "transmission", rep_classical.passed and rep_negative.passed,
            detail, dt, 30.0)


def test_05_derivative_recursion():
    t0 = time.perf_counter()
    interior = np.array([[x, y] for x in (-0.45, 0.0, 0.45)
                         for y in (-0.45, 0.0, 0.45)])
    ring = 2.0 * np.pi * (np.arange(9) + 0.3) / 9.0
    exterior = np.stack([1.9 * np.cos(ring), 1.9 * np.sin(ring)], axis=1)
    grid = np.concatenate([interior, exterior])
    worst = 0.0
    for phi in (ONE, X1, X1SQ):
        rep = check_derivative_recursion(FS2, DISK, phi, phi.grad, grid,
                                         N=64, tol=1e-5)
        worst = max(worst, rep.observed[0][1])
    dt = time.perf_counter() - t0
    _report(5, "derivative_recursion", worst <= 1e-5,
            f"max_gap={worst:.2e}", dt, 60.0)


def test_06_integration_by_parts():
    t0 = time.perf_counter()

    def k_grad(z):
        z = np.asarray(z)
        r2 = np.sum(z * z, axis=-1)
        return z[..., 0] / (2.0 * np.pi * r2)

    def dk_grad(z):
        z = np.asarray(z)
        r2 = np.sum(z * z, axis=-1)
        out = -2.0 * z * (z[..., 0] / r2)[..., None]
        out[..., 0] += 1.0
        return out / (2.0 * np.pi * r2[..., None])

    rep_identity = check_integration_by_parts(
        k_grad, dk_grad, DISK, X1SQ, X1SQ.grad, np.array([0.2, 0.0]), 0,
        N=64, tol=1e-4)
    rep_psi = check_sphere_residue(k_grad, 0, 2, 0.5, tol=1e-3)
    rep_weak = check_sphere_residue(lambda z: FS2.eval(z), 0, 2, 0.0,
                                    tol=1e-6)
    dt = time.perf_counter() - t0
    detail = (f"gap={rep_identity.observed[0][1]:.2e} "
              f"psi={rep_psi.parameters['psi']:.6f} "
              f"psi_weak={rep_weak.parameters['psi']:.2e}")
    ok = rep_identity.passed and rep_psi.passed and rep_weak.passed
    _report(6, "integration_by_parts", ok, detail, dt, 60.0)


def test_07_maximal_bound():
    t0 = time.perf_counter()

    def k_even(z):
        z = np.asarray(z)
        r2 = np.sum(z * z, axis=-1)
        return (z[..., 0] ** 2 - z[..., 1] ** 2) / r2 ** 2

    k_ctrl = lambda z: 1.0 / np.sum(np.asarray(z) ** 2, axis=-1)
    x_grid = np.array([[0.0, 0.0], [0.4, 0.2]])
    rho = np.array([1e-1, 1e-2, 1e-3, 1e-4, 1e-5])
    rep_stable = check_maximal_bound(k_even, DISK, x_grid, rho, N=64,
                                     expect="bounded", tol=0.10)
    rep_growth = check_maximal_bound(k_ctrl, DISK, x_grid[1:], rho, N=64,
                                     expect="log-growth")
    dt = time.perf_counter() - t0
    detail = (f"variation={rep_stable.observed[0][1]:.2e} "
              f"growth_deficit={rep_growth.observed[0][1]:.2e}")
    _report(7, "maximal_bound", rep_stable.passed and rep_growth.passed,
            detail, dt, 30.0)


def test_08_hessian_constant_density():
    t0 = time.perf_counter()
    pts = [np.zeros(2), np.array([0.3, 0.2]), np.array([-0.5, 0.1]),
           np.array([0.0, 0.6]), np.array([0.2, -0.4])]
    worst_val = worst_sym = 0.0
    for x in pts:
        H = volume_potential_hessian(FS2, DISK, ONE, x, 64)
        worst_val = max(worst_val, float(np.max(np.abs(H - 0.5 * np.eye(2)))))
        worst_sym = max(worst_sym, float(np.max(np.abs(H - H.T))))
    dt = time.perf_counter() - t0
    ok = worst_val <= 1e-5 and worst_sym <= 1e-6
    _report(8, "hessian_identity_over_2", ok,
            f"err={worst_val:.2e} asym={worst_sym:.2e}", dt, 60.0)


def test_09_subtraction_golden_value():
    t0 = time.perf_counter()

    def k(z):
        z = np.asarray(z)
        return z[..., 0] / (2.0 * np.pi * np.sum(z * z, axis=-1))

    def psi(y):
        y = np.asarray(y)
        return y[..., 0] ** 2 if y.ndim == 1 else y[:, 0] ** 2

    val = subtracted_integral_G(k, psi, 0, DISK, np.zeros(2), 64)
    err = abs(val - (-0.125))
    dt = time.perf_counter() - t0
    _report(9, "subtraction_golden", err <= 1e-6, f"err={err:.2e}", dt, 5.0)


def test_10_omega1_modulus_boundedness():
    t0 = time.perf_counter()
    f = get_preset("abs_x1")
    rep = modulus_experiment(FS2, DISK, f, 1.0,
                             scales=(1e-1, 1e-2, 1e-3, 1e-4), N=48)
    ratio = rep.observed[0][1]
    dt = time.perf_counter() - t0
    _report(10, "omega1_modulus", ratio <= 5.0, f"max/min={ratio:.2f}",
            dt, 120.0)


def test_11_negative_exponent_consistency():
    t0 = time.perf_counter()
    nd = negative_density(DISK, (_zero, X1, _zero), 1.0)
    pts = [np.zeros(2), np.array([0.3, 0.1]), np.array([-0.2, 0.4]),
           np.array([0.5, -0.3]), np.array([-0.4, -0.4])]
    worst = 0.0
    for x in pts:
        pn = volume_potential_negative(FS2, DISK, nd, x, 64)
        pc = volume_potential(FS2, DISK, ONE, x, 64)
        worst = max(worst, abs(pn - pc))
    nd_classical = negative_density(DISK, (ONE, _zero, _zero), 1.0)
    i_gap = abs(integral_functional_I(DISK, nd, 64)
                - integral_functional_I(DISK, nd_classical, 64))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and i_gap <= 1e-10
    _report(11, "negative_exponent", ok,
            f"pot_gap={worst:.2e} I_gap={i_gap:.2e}", dt, 10.0)


def test_12_seminorm_machinery():
    t0 = time.perf_counter()
    rng = np.random.default_rng(33)
    om1 = Modulus.omega(1.0)
    diameter = 2.0 * np.sqrt(2.0)
    c, c_prime = oracles.embedding_constants(1.0, 0.5, diameter)
    ok = True
    for _ in range(10):
        pts = rng.uniform(-1.0, 1.0, size=(50, 2))
        a, b = rng.standard_normal(2)
        vals = a * np.sin(2.0 * pts[:, 0]) + b * np.abs(pts[:, 1])
        supf = float(np.max(np.abs(vals)))
        # tail bound
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        dv = np.abs(vals[:, None] - vals[None, :])
        for aa in (0.4, 0.9):
            mask = d >= aa
            lhs = np.max(dv[mask] / np.asarray(om1(d[mask])))
            ok &= lhs <= 2.0 * supf / float(om1(aa)) + 1e-12
        # embedding chain
        s_lip = holder_seminorm(pts, vals, Modulus.power(1.0))
        s_om = holder_seminorm(pts, vals, om1)
        s_half = holder_seminorm(pts, vals, Modulus.power(0.5))
        ok &= s_om <= c * s_lip + 1e-12
        ok &= s_half <= c_prime * s_om + 1e-12
    dt = time.perf_counter() - t0
    _report(12, "seminorm_machinery", ok, "tail+embedding on 10 samples",
            dt, 5.0)
