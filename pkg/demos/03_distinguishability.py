# # Partial distinguishability and phase noise
#
# An internal degree of freedom with overlap cos(theta) fills the dip in.

# +
import numpy as np

from fock_interfere import PhaseDistribution, overlap_from_dip, partial_overlap_probs, phase_averaged_state, rho_alpha
from fock_interfere.distinguishability import simulate_partial_overlap

for theta in np.linspace(0, np.pi / 2, 5):
    closed = partial_overlap_probs(0.5, theta)
    sim = simulate_partial_overlap(0.5, theta)
    print(f"theta={theta:.3f}  P11 closed={closed[1]:.4f}  four-mode simulation={sim[1]:.4f}")
# -

# Reading the overlap back from a measured coincidence rate:

print("theta from P11=0.25:", overlap_from_dip(0.25))

# ## Shot-to-shot phase noise
#
# Populations never change; coherences shrink with the coherence factor alpha.

for width in (0.0, 1.0, np.pi, 2 * np.pi):
    dist = PhaseDistribution.uniform(width)
    rho = phase_averaged_state(0.3, dist)
    print(f"width={width:.2f}  alpha={abs(dist.alpha):.3f}  purity={rho.purity():.4f}  populations={np.round(rho.populations(), 4)}")

# The alpha-only closed form is exact when the second phase moment equals alpha squared.
# For finite-width noise the two-quantum coherence differs:

dist = PhaseDistribution.uniform(1.0)
gap = np.abs(phase_averaged_state(0.3, dist).matrix - rho_alpha(0.3, dist.alpha).matrix)
print(np.round(gap, 4))
