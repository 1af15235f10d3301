# # Quantum walks on a lattice
#
# A single particle spreads ballistically with Bessel-function amplitudes.

# +
import numpy as np
from scipy.special import jv

from fock_interfere import correlator, doublon_walk
from fock_interfere.hubbard import bessel_propagator, hardcore_density, propagator_matrix, site_densities

t = 3.0
m = np.arange(41)
exact = propagator_matrix(41, t, boundary="periodic")[20]
print("max deviation inside the light cone:", np.abs(bessel_propagator(20, m, t) - exact)[np.abs(m - 20) <= 2 * t].max())
# -

# ## Two neighbours
#
# Bosons and hard-core bosons differ by the sign inside the return probability.

for t in (0.2, 0.5, 1.0):
    j0, j1 = jv(0, 2 * t), jv(1, 2 * t)
    print(f"t={t}  boson={correlator([0, 1], [0, 1], t):.4f} ({abs(j0**2 - j1**2) ** 2:.4f})"
          f"  hard-core={correlator([0, 1], [0, 1], t, 'hardcore'):.4f} ({abs(j0**2 + j1**2) ** 2:.4f})")

# Hard-core densities come from determinants, as for free fermions.

print(np.round(hardcore_density([4, 5], 1.0, 10), 4))

# ## A bound pair
#
# A doublon at strong interaction moves slowly, as one composite particle.

walked = doublon_walk(J=1, U=20, t=7.5, L=7)
print("site densities:", np.round(site_densities(walked), 3))
