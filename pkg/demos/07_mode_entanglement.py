# # Mode entanglement, purity and the twin-copy measurement
#
# Purity of a group of sites follows from the parity of one copy after
# beamsplitters couple two identical copies.

# +
import numpy as np

from fock_interfere import reduced_density_matrix, twin_parity_purity, entropies, quench_entropy_trace
from fock_interfere import postselected_spin_entanglement
from fock_interfere.fock import FockStateVector, enumerate_basis
from fock_interfere.hubbard import HubbardParams, build_hamiltonian, ground_state

for U in (0, 1, 3, 10, 50):
    p = HubbardParams(1, U, 2, 2)
    gs = FockStateVector(p.basis(), ground_state(build_hamiltonian(p, p.basis())))
    rho = reduced_density_matrix(gs, [0])
    print(f"U={U:>2}  purity={rho.purity():.4f}  twin parity={twin_parity_purity(gs, [0]):.4f}  S2={entropies(rho)[1]:.4f}")
# -

# Tunnelling splitters add a phase exp(i pi n / 2) per particle on one copy.
# Undone, it can only lower the result; for a state of fixed particle number the
# reduced state has no coherence between different site fillings, so here the
# phase drops out and all three numbers agree.

rng = np.random.default_rng(3)
s = FockStateVector.random(enumerate_basis(3, 3), rng)
print("trace:", reduced_density_matrix(s, [0]).purity())
print("corrected:", twin_parity_purity(s, [0], "tunneling"))
print("uncorrected:", twin_parity_purity(s, [0], "tunneling", corrected=False))

# ## Entanglement after a quench
#
# Two free bosons released from |1,1>.

tr = quench_entropy_trace(1, 0, np.linspace(0, np.pi / 2, 401))
print(f"max S2={tr.s2_max:.6f} (log 3={np.log(3):.6f}) at Jt={tr.t_max:.4f}; dip S2={tr.s2_dip:.6f} at Jt={tr.t_dip:.4f}")

# ## Spin entanglement by postselection
#
# Opposite spins on a splitter, conditioned on one particle per side.

res = postselected_spin_entanglement()
print(f"success probability={res.probability:.3f}  singlet overlap={res.singlet_overlap:.3f}")
