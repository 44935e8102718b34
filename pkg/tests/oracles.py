"""Independent reference computations used by the tests.

Everything here deliberately avoids the package's quadrature machinery:
scipy adaptive integration, 1D reductions done by hand, and dense-grid
suprema.  Expected values frozen in the tests were produced by these
oracles (or are stated closed forms).
"""

import numpy as np
from scipy import integrate


def disk_ray_length(x, theta, R=1.0):
    """Distance from an interior point of the disk to the circle along
    direction theta (law of cosines root)."""
    x = np.asarray(x, dtype=float)
    e = np.array([np.cos(theta), np.sin(theta)])
    b = float(e @ x)
    return -b + np.sqrt(b * b + (R * R - x @ x))


def disk_inverse_distance_integral(x, R=1.0):
    """int_disk |x - y|^{-1} dy = int_0^{2pi} L(theta) dtheta by the polar
    reduction (the radial integral of r^{-1} r dr is the ray length)."""
    val, _ = integrate.quad(lambda t: disk_ray_length(x, t, R), 0.0,
                            2.0 * np.pi, limit=400)
    return val


def adaptive_disk_integral(f, tol=1e-10):
    """Adaptive integral of f(y1, y2) over the unit disk via iterated quad."""
    def inner(y2):
        w = np.sqrt(max(1.0 - y2 * y2, 0.0))
        val, _ = integrate.quad(lambda y1: f(y1, y2), -w, w, limit=200)
        return val

    val, _ = integrate.quad(inner, -1.0, 1.0, epsabs=tol, limit=200)
    return val


def trapezoid_area_oracle(rho, m=1 << 15):
    """Area of {r < rho(theta)} as the high-resolution trapezoid value of
    int rho^2 / 2 dtheta."""
    t = 2.0 * np.pi * np.arange(m) / m
    return float(np.sum(rho(t) ** 2) * np.pi / m)


def boundary_kernel_oracle(k, mu, x, m=1 << 14, R=1.0):
    """High-resolution trapezoid for int_circle k(x - y) mu(theta) dsigma."""
    t = 2.0 * np.pi * np.arange(m) / m
    y = np.stack([np.cos(t), np.sin(t)], axis=1) * R
    vals = k(np.asarray(x)[None, :] - y) * mu(t)
    return float(np.sum(vals) * (2.0 * np.pi * R / m))


def embedding_constants(theta, theta_prime, diameter):
    """Suprema driving the modulus embedding chain on a set of the given
    diameter:  c = sup r^theta / omega_theta(r)  and
    c' = sup omega_theta(r) / r^theta_prime, both over (0, diameter]."""
    r = np.geomspace(1e-12, diameter, 200001)
    r_t = np.exp(-1.0 / theta)
    om = np.where(r <= r_t, r ** theta * np.abs(np.log(r)),
                  r_t ** theta / theta)
    c = float(np.max(r ** theta / om))
    c_prime = float(np.max(om / r ** theta_prime))
    return c, c_prime
