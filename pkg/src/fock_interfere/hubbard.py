"""Interacting dynamics: double wells, the two-mode spin model and 1D Bose-Hubbard chains.

Hamiltonians are built densely on a :class:`~fock_interfere.fock.FockBasis`
and time evolution uses the Hermitian eigendecomposition, so no integrator
tolerances enter any result.

Conventions
-----------
* Tunneling ``-J sum_<ij> (a_i^dag a_j + h.c.)`` over nearest-neighbour bonds;
  a two-site chain has a single bond regardless of boundary.
* On-site interaction ``U/2 n (n - 1)`` for bosons, ``U n_up n_down`` for
  spinful fermions (modes ordered ``(site, spin)`` with spin fastest).
* The free single-particle propagator ``A[n, m] = <m| exp(-iHt) |n>`` equals
  ``i^(m-n) J_(m-n)(2 J t)`` on the infinite chain.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import factorial
from typing import Sequence

import numpy as np
from scipy.special import jv

from .fock import (
    FockBasis,
    FockStateVector,
    Statistics,
    enumerate_basis,
    hopping_matrix,
)
from .permanent import determinant, permanent

MOMENT_INVERSION_MAX_N = 12
DOUBLON_MIN_U_OVER_J = 10.0


class ConditioningWarning(UserWarning):
    """The moment-inversion route is numerically unreliable at this size."""


class ValidityWarning(UserWarning):
    """Parameters fall outside the regime where an effective model holds."""


class Boundary(Enum):
    PERIODIC = "periodic"
    OPEN = "open"

    @classmethod
    def parse(cls, value) -> "Boundary":
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class HubbardParams:
    J: float
    U: float
    L: int
    N: int
    boundary: Boundary = Boundary.OPEN
    statistics: Statistics = Statistics.BOSON
    spinful: bool = False
    hardcore: bool = False

    def __post_init__(self):
        object.__setattr__(self, "boundary", Boundary.parse(self.boundary))
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        if self.J < 0:
            raise ValueError("tunneling J must be non-negative")
        if self.L < 2:
            raise ValueError("need at least two sites")
        if self.N < 0:
            raise ValueError("particle number must be non-negative")
        if self.spinful and self.statistics is not Statistics.FERMION:
            raise ValueError("only fermions carry the spin label here")
        if self.statistics is Statistics.DISTINGUISHABLE:
            raise ValueError("Hubbard dynamics needs bosons or fermions")

    @property
    def modes(self) -> int:
        return 2 * self.L if self.spinful else self.L

    def basis(self) -> FockBasis:
        max_occ = 1 if self.hardcore else None
        return enumerate_basis(self.modes, self.N, self.statistics, max_occupation=max_occ)


def lattice_bonds(L: int, boundary=Boundary.OPEN) -> list[tuple[int, int]]:
    bonds = [(j, j + 1) for j in range(L - 1)]
    if Boundary.parse(boundary) is Boundary.PERIODIC and L > 2:
        bonds.append((L - 1, 0))
    return bonds


def single_particle_hamiltonian(L: int, J: float = 1.0, boundary=Boundary.OPEN) -> np.ndarray:
    h = np.zeros((L, L))
    for i, j in lattice_bonds(L, boundary):
        h[i, j] -= J
        h[j, i] -= J
    return h


def build_hamiltonian(params: HubbardParams, basis: FockBasis | None = None) -> np.ndarray:
    """Dense Hubbard Hamiltonian on ``basis`` (default: ``params.basis()``)."""
    if basis is None:
        basis = params.basis()
    if basis.modes != params.modes or basis.particles != params.N:
        raise ValueError("basis does not match the Hubbard parameters")
    dim = len(basis)
    H = np.zeros((dim, dim), dtype=complex)
    spins = 2 if params.spinful else 1
    for i, j in lattice_bonds(params.L, params.boundary):
        for s in range(spins):
            hop = hopping_matrix(basis, spins * i + s, spins * j + s)
            H -= params.J * (hop + hop.conj().T)
    occ = basis.occupations
    if params.spinful:
        diag = params.U * np.sum(occ[:, 0::2] * occ[:, 1::2], axis=1)
    elif params.statistics is Statistics.BOSON:
        diag = 0.5 * params.U * np.sum(occ * (occ - 1), axis=1)
    else:
        diag = np.zeros(dim)
    H += np.diag(diag)
    return H


class Evolver:
    """Exact propagation under a fixed Hermitian matrix via its eigenbasis."""

    def __init__(self, H: np.ndarray):
        H = np.asarray(H, dtype=complex)
        if np.max(np.abs(H - H.conj().T), initial=0.0) > 1e-12:
            raise ValueError("Hamiltonian is not Hermitian")
        self.energies, self.vectors = np.linalg.eigh(H)

    def propagate(self, amplitudes: np.ndarray, t: float) -> np.ndarray:
        coeff = self.vectors.conj().T @ amplitudes
        return self.vectors @ (np.exp(-1j * self.energies * t) * coeff)

    def propagate_many(self, amplitudes: np.ndarray, times: Sequence[float]) -> np.ndarray:
        """Array of shape ``(len(times), dim)``."""
        coeff = self.vectors.conj().T @ amplitudes
        phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), self.energies))
        return (phases * coeff) @ self.vectors.T

    def unitary(self, t: float) -> np.ndarray:
        return (self.vectors * np.exp(-1j * self.energies * t)) @ self.vectors.conj().T


def evolve(state: FockStateVector, H: np.ndarray, t: float) -> FockStateVector:
    """``exp(-i H t)|state>``."""
    return FockStateVector(state.basis, Evolver(H).propagate(state.amplitudes, t))


def energy(state: FockStateVector, H: np.ndarray) -> float:
    return float(np.real(np.vdot(state.amplitudes, H @ state.amplitudes)))


# --- two particles in a double well -------------------------------------------------


def double_well_p11(J: float, U: float, t):
    """Probability to remain in ``|1,1>`` for two bosons in a double well."""
    if J <= 0:
        raise ValueError("J must be positive")
    omega = np.sqrt(16 * J**2 + U**2)
    return 1 - (16 * J**2 / omega**2) * np.sin(omega * np.asarray(t) / 2) ** 2


def double_well_p11_min(J: float, U: float) -> float:
    return U**2 / (16 * J**2 + U**2)


def double_well_reduced_hamiltonian(J: float, U: float) -> np.ndarray:
    """Hamiltonian in the ``{|1,1>, |+>}`` subspace."""
    return np.array([[0.0, -2 * J], [-2 * J, U]])


def _fermi_states() -> tuple[FockBasis, dict[str, np.ndarray]]:
    # modes (1 up, 1 down, 2 up, 2 down)
    basis = enumerate_basis(4, 2, Statistics.FERMION)
    def ket(occ):
        v = np.zeros(len(basis), dtype=complex)
        v[basis.index_of(occ)] = 1
        return v
    dbl_1 = ket((1, 1, 0, 0))  # c1up^dag c1dn^dag |0>
    dbl_2 = ket((0, 0, 1, 1))
    up_dn = ket((1, 0, 0, 1))  # c1up^dag c2dn^dag |0>
    dn_up = ket((0, 1, 1, 0))  # c1dn^dag c2up^dag |0>
    r2 = np.sqrt(2)
    return basis, {
        "S": (up_dn - dn_up) / r2,
        "T": (up_dn + dn_up) / r2,
        "+": (dbl_1 + dbl_2) / r2,
        "-": (dbl_1 - dbl_2) / r2,
    }


FERMI_LABELS = ("S", "T", "+", "-")


def fermi_double_well_dynamics(J: float, U: float, initial: str, t) -> dict[str, complex]:
    """Amplitudes on ``|S>, |T>, |+>, |->`` for two opposite-spin fermions.

    Evolves the full four-mode fermionic Hamiltonian; ``initial`` is one of
    ``"S", "T", "+", "-"``.
    """
    if initial not in FERMI_LABELS:
        raise ValueError(f"initial state must be one of {FERMI_LABELS}, got {initial!r}")
    basis, kets = _fermi_states()
    params = HubbardParams(J, U, 2, 2, statistics=Statistics.FERMION, spinful=True)
    H = build_hamiltonian(params, basis)
    psi = Evolver(H).propagate(kets[initial], t)
    return {label: complex(np.vdot(kets[label], psi)) for label in FERMI_LABELS}


# --- N bosons in a double well: collective spin ------------------------------------


@dataclass(frozen=True, eq=False)
class SpinRepresentation:
    """Collective spin ``S = N/2`` of two bosonic modes.

    Basis order follows the Fock basis, ``|N,0>, ..., |0,N>``, so ``Sz``
    runs from ``N/2`` down to ``-N/2``.
    """

    N: int
    basis: FockBasis
    Sx: np.ndarray
    Sy: np.ndarray
    Sz: np.ndarray

    @property
    def m_values(self) -> np.ndarray:
        """``n1 - N/2`` for each basis state."""
        return np.real(np.diag(self.Sz))


def spin_operators(N: int) -> SpinRepresentation:
    basis = enumerate_basis(2, N)
    a12 = hopping_matrix(basis, 0, 1)
    a21 = hopping_matrix(basis, 1, 0)
    occ = basis.occupations
    Sx = (a12 + a21) / 2
    Sy = (a12 - a21) / 2j
    Sz = np.diag((occ[:, 0] - occ[:, 1]) / 2).astype(complex)
    return SpinRepresentation(N, basis, Sx, Sy, Sz)


def lmg_hamiltonian(N: int, J: float, U: float, spin: SpinRepresentation | None = None) -> np.ndarray:
    """``-2 J Sx + U Sz^2``; constants in the particle number are dropped."""
    spin = spin or spin_operators(N)
    return -2 * J * spin.Sx + U * spin.Sz @ spin.Sz


def sz_moments(amplitudes: np.ndarray, spin: SpinRepresentation, orders: int) -> np.ndarray:
    """``<Sz^n>`` for ``n = 0 .. orders``."""
    p = np.abs(amplitudes) ** 2
    m = spin.m_values
    return np.array([np.dot(p, m**n) for n in range(orders + 1)])


def free_sz_moments(initial: np.ndarray, spin: SpinRepresentation, J: float, t: float, orders: int) -> np.ndarray:
    """``<Sz(t)^n>`` at ``U = 0`` from the rotated operator, no state evolution.

    In the Heisenberg picture ``Sz(t) = cos(2Jt) Sz - sin(2Jt) Sy`` for
    ``H = -2 J Sx``.
    """
    op = np.cos(2 * J * t) * spin.Sz - np.sin(2 * J * t) * spin.Sy
    out = np.empty(orders + 1)
    v = np.asarray(initial, dtype=complex)
    w = v.copy()
    for n in range(orders + 1):
        out[n] = np.real(np.vdot(v, w))
        w = op @ w
    return out


def moments_to_distribution(moments: np.ndarray, N: int) -> np.ndarray:
    """Invert ``<Sz^n> = sum_m (m - N/2)^n P_m`` by least squares.

    Rows are rescaled by ``(N/2)^n`` (moments of ``Sz / S``), an exact
    reformulation that tames the Vandermonde conditioning. Output ordered
    by ``n1 = 0 .. N``.
    """
    if N == 0:
        return np.array([1.0])
    S = N / 2
    nodes = (np.arange(N + 1) - S) / S
    A = np.vander(nodes, N + 1, increasing=True).T  # A[n, m] = nodes[m]**n
    b = np.asarray(moments[: N + 1]) / S ** np.arange(N + 1)
    P, *_ = np.linalg.lstsq(A, b, rcond=None)
    return P


@dataclass
class LMGDistribution:
    """``P(n1, N - n1)`` indexed by ``n1 = 0 .. N``, from both routes."""

    N: int
    t: float
    direct: np.ndarray
    from_moments: np.ndarray | None

    @property
    def n1(self) -> np.ndarray:
        return np.arange(self.N + 1)


def lmg_initial_state(N: int, n1: int | None = None) -> np.ndarray:
    """Fock state ``|n1, N - n1>`` (default balanced) in the spin basis."""
    basis = enumerate_basis(2, N)
    if n1 is None:
        n1 = N // 2
    v = np.zeros(len(basis), dtype=complex)
    v[basis.index_of((n1, N - n1))] = 1
    return v


def lmg_distribution(N: int, J: float, U: float, t: float, initial: np.ndarray | None = None, moments: bool | None = None) -> LMGDistribution:
    """Occupation distribution after evolving under the two-mode spin model.

    The direct route evolves the state; the moment route rebuilds the
    distribution from ``<Sz^n(t)>``. At ``U = 0`` the moments come from the
    rotated ``Sz`` operator applied to the initial state, otherwise from the
    evolved state. Moment inversion runs by default for ``N <= 12`` and
    warns beyond.
    """
    if N > 40:
        raise ValueError("spin model limited to N <= 40")
    spin = spin_operators(N)
    psi0 = lmg_initial_state(N) if initial is None else np.asarray(initial, dtype=complex)
    psi_t = Evolver(lmg_hamiltonian(N, J, U, spin)).propagate(psi0, t)
    # basis order is n1 = N .. 0; flip to n1 = 0 .. N
    direct = (np.abs(psi_t) ** 2)[::-1]
    if moments is None:
        moments = N <= MOMENT_INVERSION_MAX_N
    recon = None
    if moments:
        if N > MOMENT_INVERSION_MAX_N:
            warnings.warn(
                f"moment inversion for N={N} > {MOMENT_INVERSION_MAX_N} is ill-conditioned",
                ConditioningWarning,
                stacklevel=2,
            )
        if U == 0:
            mom = free_sz_moments(psi0, spin, J, t, N)
        else:
            mom = sz_moments(psi_t, spin, N)
        recon = moments_to_distribution(mom, N)
    return LMGDistribution(N, t, direct, recon)


# --- free propagation on a chain ------------------------------------------------


def bessel_propagator(n, m, t: float, J: float = 1.0):
    """``i^(m-n) J_(m-n)(2 J t)`` on the infinite chain."""
    d = np.asarray(m) - np.asarray(n)
    return (1j) ** (d % 4) * jv(d, 2 * J * t)


def quasimomentum_propagator(n, m, t: float, L: int, J: float = 1.0):
    """Exact periodic-chain amplitude from the plane-wave sum."""
    q = 2 * np.pi * np.arange(L) / L
    d = np.asarray(m) - np.asarray(n)
    phase = np.exp(1j * np.multiply.outer(d, q) + 2j * J * t * np.cos(q))
    return phase.sum(axis=-1) / L


def propagator_matrix(L: int, t: float, J: float = 1.0, boundary=Boundary.OPEN) -> np.ndarray:
    """``A[n, m]`` for all site pairs by exact single-particle evolution."""
    h = single_particle_hamiltonian(L, J, boundary)
    e, v = np.linalg.eigh(h)
    U = (v * np.exp(-1j * e * t)) @ v.T
    return U.T  # A[n, m] = <m|U|n>


def lattice_propagator(n: int, m: int, t: float, L: int | None = None, boundary=Boundary.PERIODIC, J: float = 1.0) -> complex:
    """Single-particle amplitude from site ``n`` to site ``m``.

    ``L=None`` selects the infinite chain (Bessel form); otherwise the
    periodic chain uses the quasimomentum sum and the open chain exact
    diagonalisation.
    """
    if L is None:
        return complex(bessel_propagator(n, m, t, J))
    if Boundary.parse(boundary) is Boundary.PERIODIC:
        return complex(quasimomentum_propagator(n, m, t, L, J))
    return complex(propagator_matrix(L, t, J, Boundary.OPEN)[n, m])


def _propagator_sub(initial, final, t, J, L, boundary):
    initial, final = list(initial), list(final)
    if len(initial) != len(final):
        raise ValueError("initial and final site lists must have equal length")
    if L is None:
        return bessel_propagator(np.array(initial)[:, None], np.array(final)[None, :], t, J)
    A = propagator_matrix(L, t, J, boundary)
    return A[np.ix_(initial, final)]


def correlator(initial_sites: Sequence[int], final_sites: Sequence[int], t: float, statistics="boson", J: float = 1.0, L: int | None = None, boundary=Boundary.OPEN) -> float:
    """Normal-ordered density correlator ``<a+_m1..a+_mN a_m1..a_mN>(t)``.

    Bosons at ``U = 0`` give ``|perm A|^2``; ``"fermion"`` or ``"hardcore"``
    (the ``U -> inf`` limit in 1D) give ``|det A|^2``. Initial sites must be
    distinct for hard-core particles. For distinct final sites this is the
    detection probability.
    """
    kind = str(getattr(statistics, "value", statistics)).lower()
    sub = _propagator_sub(initial_sites, final_sites, t, J, L, boundary)
    if kind == "boson":
        # repeated initial sites carry the 1/sqrt(prod n!) state normalisation
        _, counts = np.unique(initial_sites, return_counts=True)
        norm = int(np.prod([factorial(int(c)) for c in counts]))
        return float(abs(permanent(sub)) ** 2 / norm)
    if kind in ("fermion", "hardcore"):
        return float(abs(determinant(sub)) ** 2)
    raise ValueError(f"unsupported statistics {statistics!r}")


def hardcore_density(initial_sites: Sequence[int], t: float, L: int, J: float = 1.0, boundary=Boundary.OPEN) -> np.ndarray:
    """Site densities of hard-core bosons from determinant correlators.

    Sums ``|det|^2`` over every final configuration containing each site.
    """
    initial_sites = list(initial_sites)
    A = propagator_matrix(L, t, J, boundary)[initial_sites]
    dens = np.zeros(L)
    for conf in combinations(range(L), len(initial_sites)):
        p = abs(determinant(A[:, list(conf)])) ** 2
        dens[list(conf)] += p
    return dens


def site_densities(state: FockStateVector) -> np.ndarray:
    return state.probabilities() @ state.basis.occupations


# --- bound pairs -------------------------------------------------------------------


def doublon_amplitudes(J: float, U: float, t: float, sites: Sequence[int]) -> np.ndarray:
    """``i^n J_n(4 J^2 t / U)`` for the pair's displacement ``n``."""
    n = np.asarray(sites)
    return (1j) ** (n % 4) * jv(n, 4 * J**2 * t / U)


def doublon_walk(J: float, U: float, t: float, L: int, origin: int | None = None) -> FockStateVector:
    """Effective bound-pair wavefunction on an ``L``-site chain.

    The pair starts doubly occupying ``origin`` (default the centre site)
    and hops with the second-order rate set by ``J^2/U``. Weight outside the
    chain is discarded and the state renormalised.
    """
    if U < DOUBLON_MIN_U_OVER_J * J:
        warnings.warn(
            f"U/J = {U / J:.3g} is below {DOUBLON_MIN_U_OVER_J}; the bound-pair picture is unreliable",
            ValidityWarning,
            stacklevel=2,
        )
    if origin is None:
        origin = L // 2
    basis = enumerate_basis(L, 2)
    amps = doublon_amplitudes(J, U, t, np.arange(L) - origin)
    comps = {}
    for j, a in enumerate(amps):
        occ = [0] * L
        occ[j] = 2
        comps[tuple(occ)] = a
    return FockStateVector.from_dict(basis, comps).normalized()


def double_occupancy_profile(state: FockStateVector) -> np.ndarray:
    """Per-site probability that the site holds two or more particles."""
    occ = state.basis.occupations
    return state.probabilities() @ (occ >= 2).astype(float)


def ground_state(H: np.ndarray) -> np.ndarray:
    e, v = np.linalg.eigh(H)
    return v[:, 0]
