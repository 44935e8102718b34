"""Second derivatives of volume potentials and the omega_1 modulus story.

The Hessian entry (l, j) is assembled from three computable pieces: the
subtraction operator G_l applied to the odd homogeneous kernel k_{j,1}, a
boundary term with the normal component as moment, and an absolutely
integrable remainder.  For f = 1 on the disk the result is the identity
matrix over two, the PDE in disguise.

For a Lipschitz density the Hessian is continuous with modulus
omega_1(r) = r |log r| (capped); the experiment below tabulates the sampled
omega_1- and Lipschitz-seminorms of the Hessian across pair separations for
f = |y_1|, whose kink makes the density genuinely non-differentiable.
"""

import numpy as np

import volpot
from volpot.verify import modulus_experiment

fs = volpot.laplace_fundamental(2)
disk = volpot.disk()
one = volpot.get_preset("one")

print("Hessian of the f = 1 disk potential (exact: I/2):")
for xx in ((0.0, 0.0), (0.3, 0.2), (-0.5, 0.1)):
    H = volpot.volume_potential_hessian(fs, disk, one, np.array(xx), 64)
    print(f"  x = {xx}: max |H - I/2| = "
          f"{np.max(np.abs(H - 0.5 * np.eye(2))):.2e}")

print()
print("golden value of the subtraction operator:")
k = lambda z: np.asarray(z)[..., 0] / (
    2.0 * np.pi * np.sum(np.asarray(z) ** 2, axis=-1))
psi = lambda y: (np.asarray(y)[..., 0] ** 2 if np.asarray(y).ndim > 1
                 else np.asarray(y)[0] ** 2)
val = volpot.subtracted_integral_G(k, psi, 0, disk, np.zeros(2), 64)
print(f"  G_1[z1/(2 pi |z|^2), y1^2](0) = {val.real:.10f}   (exact -1/8)")

print()
print("modulus experiment for f = |y1| (Lipschitz, kinked on the axis):")
rep = modulus_experiment(fs, disk, volpot.get_preset("abs_x1"), 1.0,
                         scales=(1e-1, 1e-2, 1e-3, 1e-4), N=48)
print(f"{'scale':>8} {'omega1-seminorm':>16} {'Lipschitz-seminorm':>20}")
for s, om, lip in zip(rep.parameters["scales"],
                      rep.parameters["omega1_seminorms"],
                      rep.parameters["lipschitz_seminorms"]):
    print(f"{s:8.0e} {om:16.5f} {lip:20.5f}")
print(f"omega1 max/min across scales: {rep.observed[0][1]:.2f} "
      f"(bounded; tolerance 5)")
print("the omega_1-seminorm stays bounded, which is the guaranteed ceiling "
      "for Lipschitz")
print("densities; plain Lipschitz continuity of the second derivatives is "
      "not guaranteed")
print("in general, although this particular density does not break it")
