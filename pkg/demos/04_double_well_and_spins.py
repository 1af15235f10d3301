# # Interacting bosons in a double well
#
# Two bosons start as |1,1>. Interactions stop them from bunching completely.

# +
import numpy as np

from fock_interfere import HubbardParams, build_hamiltonian, double_well_p11, evolve, lmg_distribution
from fock_interfere.fock import FockStateVector
from fock_interfere.hubbard import double_well_p11_min

ts = np.linspace(0, 3, 7)
for U in (0, 1, 4, 16):
    print(f"U={U:>2}  min P11={double_well_p11_min(1, U):.4f}  P11(t)={np.round(double_well_p11(1, U, ts), 3)}")
# -

# Exact evolution agrees with the closed form.

p = HubbardParams(J=1, U=4, L=2, N=2)
s = evolve(FockStateVector.from_occupation((1, 1)), build_hamiltonian(p, p.basis()), 0.7)
print(s.probability((1, 1)), double_well_p11(1, 4, 0.7))

# ## Collective spin picture
#
# N bosons in two modes form a spin N/2. At the balanced point only even
# occupations survive.

d = lmg_distribution(22, 1, 0, np.pi / 4)
print("odd weight:", d.direct[1::2].sum())
print("P(n1):", np.round(d.direct, 4))

# The same distribution is recoverable from the moments of the occupation
# difference while the Vandermonde system stays well conditioned.

d = lmg_distribution(10, 1, 0.5, 0.8)
print("moment route error:", np.max(np.abs(d.direct - d.from_moments)))
