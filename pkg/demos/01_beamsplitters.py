# # Two particles, one beamsplitter
#
# Bosons bunch, fermions anti-bunch, distinguishable particles toss coins.

# +
import numpy as np

from fock_interfere import beamsplitter, output_distribution
from fock_interfere.interference import mach_zehnder_probs, mach_zehnder_unitary

bs = beamsplitter(0.5)
for stats in ("boson", "fermion", "distinguishable"):
    print(f"{stats:>16}", output_distribution((1, 1), bs, stats))
# -

# The splitter phase does not matter for the coincidence rate.

for phi in np.linspace(0, np.pi, 4):
    print(f"phi={phi:.2f}  P(1,1)={output_distribution((1, 1), beamsplitter(0.5, phi))[(1, 1)]:.1e}")

# ## Mach-Zehnder fringes
#
# A single particle, two identical splitters and a phase on the lower arm.

for phi in np.linspace(0, 2 * np.pi, 7):
    closed = mach_zehnder_probs(0.3, phi)
    sim = output_distribution((1, 0), mach_zehnder_unitary(0.3, phi), "boson")
    print(f"phi={phi:4.2f}  closed={closed[0]:.4f},{closed[1]:.4f}  simulated={sim[(1, 0)]:.4f},{sim[(0, 1)]:.4f}")
