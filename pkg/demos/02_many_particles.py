# # Many-particle interference and permanents
#
# Transition amplitudes of bosons are permanents of scattering submatrices.

# +
import time

import numpy as np

from fock_interfere import bunching_enhancement, permanent, two_mode_nn_distribution
from fock_interfere.interference import fourier_unitary, output_distribution

rng = np.random.default_rng(1)
A = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
start = time.perf_counter()
value = permanent(A)
print(f"perm of a 20x20 complex matrix: {value:.4e} in {time.perf_counter() - start:.2f} s")
# -

# ## (N, N) on a balanced splitter
#
# Every odd output pattern vanishes for bosons.

for N in (1, 2, 3, 4):
    d = two_mode_nn_distribution(N)
    odd = sum(q for (k, _), q in d.items() if k % 2)
    print(f"N={N}  odd weight={odd:.1e}  P(2N,0)={d[(2 * N, 0)]:.4f}")

# Distinguishable particles give a plain binomial instead.

print(two_mode_nn_distribution(2, statistics="distinguishable"))

# ## Bunching
#
# All particles in one output mode: bosons beat classical particles by n!/prod(r_j!).

for occ in [(1, 1), (1, 1, 1), (2, 1, 0), (1, 1, 1, 1)]:
    print(occ, bunching_enhancement(occ))

# A three-mode Fourier network also suppresses patterns, here with a cyclic input.

d = output_distribution((1, 1, 1), fourier_unitary(3))
print({k: round(v, 4) for k, v in d.items() if v > 1e-12})
