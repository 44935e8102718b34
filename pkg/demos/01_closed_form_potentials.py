"""Newtonian volume potentials of constant density against closed forms.

For the unit disk with f = 1 the potential is (|x|^2 - 1)/4 inside and
log|x|/2 outside; for the unit ball it is (|x|^2 - 3)/6 inside and
-1/(3|x|) outside.  The same quadrature machinery evaluates both sides of
the boundary, switching to singularity-clustered rules where the kernel
blows up.
"""

import numpy as np

import volpot

fs2 = volpot.laplace_fundamental(2)
fs3 = volpot.laplace_fundamental(3)
disk = volpot.disk()
ball = volpot.make_ball(3, [0.0, 0.0, 0.0], 1.0)
one = volpot.get_preset("one")

print("unit disk, f = 1  (exact: (r^2-1)/4 inside, log r / 2 outside)")
print(f"{'r':>8} {'computed':>18} {'exact':>18} {'error':>10}")
for r in (0.0, 0.25, 0.5, 0.75, 0.9, 1.5, 2.0, 4.0):
    x = np.array([r, 0.0])
    val = volpot.volume_potential(fs2, disk, one, x, N=64).real
    exact = (r * r - 1.0) / 4.0 if r < 1.0 else np.log(r) / 2.0
    print(f"{r:8.2f} {val:18.12f} {exact:18.12f} {abs(val - exact):10.2e}")

print()
print("unit ball, f = 1  (exact: (r^2-3)/6 inside, -1/(3r) outside)")
print(f"{'r':>8} {'computed':>18} {'exact':>18} {'error':>10}")
for r in (0.0, 0.5, 0.9, 1.5, 3.0):
    x = np.array([r, 0.0, 0.0])
    val = volpot.volume_potential(fs3, ball, one, x, N=32).real
    exact = (r * r - 3.0) / 6.0 if r < 1.0 else -1.0 / (3.0 * r)
    print(f"{r:8.2f} {val:18.12f} {exact:18.12f} {abs(val - exact):10.2e}")

print()
print("gradient of the disk potential at (0.5, 0): exact (0.25, 0)")
g = volpot.volume_potential_gradient(fs2, disk, one, np.array([0.5, 0.0]), 64)
print("  computed:", np.real(g))

print()
print("single layer of the unit circle with moment 1:")
print("  at the center (exact 0):      ",
      volpot.single_layer(fs2, disk, one, np.zeros(2), 48).real)
print("  on the boundary (exact 0):    ",
      volpot.single_layer(fs2, disk, one, np.array([1.0, 0.0]), 48).real)
print("  at (e, 0)     (exact 1):      ",
      volpot.single_layer(fs2, disk, one, np.array([np.e, 0.0]), 48).real)
