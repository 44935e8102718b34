"""The three fundamental-solution kinds and the structure of their gradients.

Each gradient splits into an odd kernel that is positively homogeneous of
degree -(n-1) (the whole gradient for Laplace-type kinds) plus a milder
remainder.  A finite-difference application of the operator confirms the
homogeneous equation away from the pole.
"""

import numpy as np

import volpot

laplace = volpot.laplace_fundamental(2)
aniso = volpot.principal_fundamental(
    volpot.OperatorCoefficients(2, np.diag([4.0, 1.0]), [0, 0], 0))
screened = volpot.helmholtz_fundamental(2, 1.0)

print("values at x = (1, 0):")
x = np.array([1.0, 0.0])
for name, fs in (("laplace", laplace), ("anisotropic", aniso),
                 ("modified-helmholtz", screened)):
    print(f"  {name:20s} S(x) = {fs.eval(x): .10f}")

print()
print("gradient split at shrinking radii (modified-helmholtz, kappa = 1):")
print(f"{'|x|':>8} {'|k1|':>12} {'|k2|':>12} {'|k2|/|k1|':>12}")
for ex in range(1, 6):
    r = 10.0 ** -ex
    k1, k2 = screened.split_gradient(np.array([r, 0.0]))
    n1, n2 = np.max(np.abs(k1)), np.max(np.abs(k2))
    print(f"{r:8.0e} {n1:12.4e} {n2:12.4e} {n2 / n1:12.4e}")
print("the remainder k2 is subordinate to the homogeneous part near 0")

print()
print("oddness / homogeneity of k1 (exact to the bit):")
z = np.array([0.37, -0.81])
k1, _ = aniso.split_gradient(z)
k1n, _ = aniso.split_gradient(-z)
k1s, _ = aniso.split_gradient(2.0 * z)
print("  k1(-z) + k1(z)        =", k1n + k1)
print("  k1(2z) - k1(z)/2      =", k1s - k1 / 2.0)

print()
print("operator applied to its fundamental solution off the pole "
      "(relative finite-difference residual):")
rng = np.random.default_rng(0)
for name, fs in (("laplace", laplace), ("anisotropic", aniso),
                 ("modified-helmholtz", screened)):
    worst = 0.0
    for _ in range(20):
        x = rng.standard_normal(2)
        r = rng.uniform(0.3, 1.5)
        x *= r / np.linalg.norm(x)
        val, scale = volpot.apply_operator_fd(
            fs.operator, lambda p: fs.eval(p), x, 1e-4 * r, return_scale=True)
        worst = max(worst, abs(val) / scale)
    print(f"  {name:20s} {worst:.2e}")
