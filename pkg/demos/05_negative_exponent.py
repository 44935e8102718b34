"""Densities of the form f0 + sum_j d_j f_j and their potentials.

A density given through Hölder components is integrated without ever
differentiating it: the distributional derivative trades for a boundary
term with the outward normal and differentiated volume potentials.  The
representation (0, y1, 0) realizes the same distribution as f = 1, and all
the derived objects agree: the extended integration functional, the pairing
with test functions, and the volume potential itself, including its
interior/exterior transmission.
"""

import numpy as np

import volpot
from volpot.verify import check_transmission

fs = volpot.laplace_fundamental(2)
disk = volpot.disk()
one = volpot.get_preset("one")
x1 = volpot.get_preset("x1")
zero = lambda y: np.zeros(np.asarray(y).shape[0])

nd = volpot.negative_density(disk, (zero, x1, zero), alpha=1.0)
nd_classical = volpot.negative_density(disk, (one, zero, zero), alpha=1.0)
print(f"representation (0, y1, 0) of f = 1; component-norm bound "
      f"{nd.norm_bound:.3f}")

print()
print("extended integration functional (both represent f = 1, integral pi):")
print("  I[(1, 0, 0)]  =", volpot.integral_functional_I(disk, nd_classical,
                                                        64).real)
print("  I[(0, y1, 0)] =", volpot.integral_functional_I(disk, nd, 64).real)

print()
print("pairing against v = y1^2 (both routes equal the canonical integral):")
x1sq = volpot.get_preset("x1sq")
e_val = volpot.extension_pairing_E(disk, nd_classical, x1sq, x1sq.grad, 64)
j_val = volpot.canonical_pairing_J(disk, one, x1sq, 64)
print(f"  pairing: {e_val.real:.12f}   canonical: {j_val.real:.12f}")

print()
print("volume potential of (0, y1, 0) vs the classical potential of f = 1:")
for xx in ((0.0, 0.0), (0.3, 0.1), (2.0, 0.0)):
    x = np.array(xx)
    pn = volpot.volume_potential_negative(fs, disk, nd, x, 64)
    pc = volpot.volume_potential(fs, disk, one, x, 64)
    print(f"  x = {xx}: |difference| = {abs(pn - pc):.2e}")

print()
print("transmission of the component-represented potential "
      "(one-sided limits on 8 boundary samples):")
rep = check_transmission(fs, disk, ("negative", nd), n_samples=8, N=64)
print(f"  max interior/exterior jump after extrapolation: "
      f"{rep.observed[0][1]:.2e}")
