# # Entanglement of identical particles
#
# A symmetric two-particle amplitude has a Schmidt decomposition; rank above two
# means the particles are entangled beyond mere symmetrization.

# +
import numpy as np

from fock_interfere import TwoParticleAmplitude, beamsplitter, csop_check, particle_entangled, schmidt_spectrum
from fock_interfere.entanglement import phi_x_amplitude
from fock_interfere.fock import FockStateVector
from fock_interfere.hubbard import doublon_walk
from fock_interfere.interference import evolve_state

states = {
    "|1,1>": FockStateVector.from_occupation((1, 1)),
    "after splitter": evolve_state(FockStateVector.from_occupation((1, 1)), beamsplitter(0.5)),
    "doublon": FockStateVector.from_occupation((0, 0, 2, 0, 0)),
    "walked doublon": doublon_walk(1, 20, 7.5, 7),
}
amps = {k: TwoParticleAmplitude.from_fock_state(s) for k, s in states.items()}
amps["phi_x"] = phi_x_amplitude()

for name, v in amps.items():
    spec = schmidt_spectrum(v)
    verdict = particle_entangled(v)
    print(f"{name:>15}  rank={spec.rank}  coefficients={np.round(spec.coefficients[:spec.rank], 4)}  {verdict.classification.name}")
# -

# ## Complete set of orthogonal projectors
#
# A non-entangled state admits a one-particle projector with expectation one.

for name, v in amps.items():
    res = csop_check(v)
    if res.found:
        print(f"{name:>15}  projector found, expectation={res.expectation:.4f}")
    elif res.best_found is None:
        print(f"{name:>15}  both particles share one state")
    else:
        print(f"{name:>15}  no projector, best expectation={res.best_found:.4f}")
