"""Linear mode networks and exact many-particle output statistics.

A :class:`ModeUnitary` ``M`` maps input creation operators onto output ones,
``a_j^dagger -> sum_k M[j, k] b_k^dagger``; rows are input modes, columns are
output modes, and cascading ``M1`` then ``M2`` gives ``M1 @ M2``.

Fock-space matrix elements follow from the permanent (bosons) or determinant
(fermions) of the submatrix that repeats row ``i`` ``n_i`` times and column
``j`` ``m_j`` times.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from .fock import (
    FockBasis,
    FockStateVector,
    OccupationVector,
    Statistics,
    enumerate_basis,
)
from .permanent import determinant, factorial_product, permanent

UNITARITY_TOL = 1e-10


class UnitarityError(ValueError):
    """Raised when a mode matrix is not unitary."""


class ParticleNumberError(ValueError):
    """Raised when input and output patterns disagree in particle or mode count."""


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"mode unitary must be square, got {m.shape}")
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if dev > UNITARITY_TOL:
            raise UnitarityError(f"matrix deviates from unitarity by {dev:.3g}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def modes(self) -> int:
        return self.matrix.shape[0]

    def then(self, other: "ModeUnitary") -> "ModeUnitary":
        """The network ``self`` followed by ``other``."""
        return ModeUnitary(self.matrix @ other.matrix)

    def embed(self, modes: Sequence[int], total: int) -> "ModeUnitary":
        """Act on ``modes`` of a larger ``total``-mode system, identity elsewhere."""
        if len(modes) != self.modes:
            raise ValueError("mode list does not match the unitary size")
        big = np.eye(total, dtype=complex)
        idx = np.asarray(modes)
        big[np.ix_(idx, idx)] = self.matrix
        return ModeUnitary(big)

    def kron_identity(self, internal: int) -> "ModeUnitary":
        """Same network acting on every one of ``internal`` label copies.

        Mode ``j`` with label ``s`` becomes mode ``s * L + j``.
        """
        return ModeUnitary(np.kron(np.eye(internal), self.matrix))


def _check_R(R: float):
    if not (0.0 <= R <= 1.0) or not np.isfinite(R):
        raise ValueError(f"reflectivity must lie in [0, 1], got {R}")


def beamsplitter(R: float, varphi: float = 0.0) -> ModeUnitary:
    """Two-mode splitter with reflection phase ``i exp(+-i varphi)``.

    ``a1^dagger -> sqrt(T) b2^dagger + i e^{i varphi} sqrt(R) b1^dagger`` and
    ``a2^dagger -> sqrt(T) b1^dagger + i e^{-i varphi} sqrt(R) b2^dagger``.
    """
    _check_R(R)
    T = 1.0 - R
    r, t = np.sqrt(R), np.sqrt(T)
    return ModeUnitary(
        np.array(
            [
                [1j * np.exp(1j * varphi) * r, t],
                [t, 1j * np.exp(-1j * varphi) * r],
            ]
        )
    )


def phase_shifter(phases: Sequence[float]) -> ModeUnitary:
    return ModeUnitary(np.diag(np.exp(1j * np.asarray(phases, dtype=float))))


def fourier_unitary(L: int) -> ModeUnitary:
    j = np.arange(L)
    return ModeUnitary(np.exp(2j * np.pi * np.outer(j, j) / L) / np.sqrt(L))


def mach_zehnder_unitary(R: float, phi: float) -> ModeUnitary:
    """Splitter, phase ``phi`` on the lower arm, identical second splitter."""
    bs = beamsplitter(R)
    return bs.then(phase_shifter([0.0, phi])).then(bs)


def mach_zehnder_probs(R: float, phi: float) -> tuple[float, float]:
    """Closed-form ``(P(1,0), P(0,1))`` for one particle entering mode 1."""
    _check_R(R)
    T = 1.0 - R
    p10 = R**2 + T**2 - 2 * R * T * np.cos(phi)
    p01 = 4 * R * T * np.cos(phi / 2) ** 2
    return float(p10), float(p01)


def _submatrix(U: np.ndarray, n_in: Sequence[int], m_out: Sequence[int]) -> np.ndarray:
    rows = np.repeat(np.arange(len(n_in)), n_in)
    cols = np.repeat(np.arange(len(m_out)), m_out)
    return U[np.ix_(rows, cols)]


def _as_matrix(U) -> np.ndarray:
    return U.matrix if isinstance(U, ModeUnitary) else np.asarray(U, dtype=complex)


def _validate_patterns(n_in, m_out, L):
    if len(n_in) != L or len(m_out) != L:
        raise ParticleNumberError(f"patterns must have {L} modes")
    if sum(n_in) != sum(m_out):
        raise ParticleNumberError(f"particle number {sum(n_in)} -> {sum(m_out)} is not conserved")


def fock_amplitude(U, n_in: Sequence[int], m_out: Sequence[int], statistics=Statistics.BOSON) -> complex:
    """<m_out| U |n_in> for bosons or fermions."""
    stats = Statistics.parse(statistics)
    M = _as_matrix(U)
    n_in, m_out = tuple(n_in), tuple(m_out)
    _validate_patterns(n_in, m_out, M.shape[0])
    sub = _submatrix(M, n_in, m_out)
    if stats is Statistics.FERMION:
        if max(n_in, default=0) > 1 or max(m_out, default=0) > 1:
            return 0j
        return determinant(sub)
    if stats is Statistics.DISTINGUISHABLE:
        raise ValueError("distinguishable particles have no single Fock amplitude")
    return permanent(sub) / np.sqrt(factorial_product(n_in) * factorial_product(m_out))


def lift_to_fock(U, basis: FockBasis) -> np.ndarray:
    """Matrix of the many-particle unitary on ``basis`` (rows = outputs)."""
    M = _as_matrix(U)
    if not isinstance(U, ModeUnitary):
        ModeUnitary(M)  # unitarity check
    if M.shape[0] != basis.modes:
        raise ValueError("mode count of unitary and basis differ")
    if basis.statistics is Statistics.DISTINGUISHABLE:
        raise ValueError("lift_to_fock needs bosonic or fermionic statistics")
    if basis.hardcore and basis.particles > 1:
        raise ValueError("a linear network does not preserve the hard-core constraint")
    dim = len(basis)
    out = np.empty((dim, dim), dtype=complex)
    fermion = basis.statistics is Statistics.FERMION
    norms = np.sqrt([factorial_product(e) for e in basis.elements])
    rows_idx = [np.repeat(np.arange(basis.modes), e) for e in basis.elements]
    for c, n_in in enumerate(basis.elements):
        rsub = M[rows_idx[c]]
        for r in range(dim):
            sub = rsub[:, rows_idx[r]]
            if fermion:
                out[r, c] = determinant(sub)
            else:
                out[r, c] = _small_perm(sub) / (norms[c] * norms[r])
    return out


def _small_perm(sub: np.ndarray) -> complex:
    n = sub.shape[0]
    if n == 0:
        return 1 + 0j
    if n == 1:
        return complex(sub[0, 0])
    if n == 2:
        return complex(sub[0, 0] * sub[1, 1] + sub[0, 1] * sub[1, 0])
    return permanent(sub)


def evolve_state(state: FockStateVector, U) -> FockStateVector:
    """Send a many-particle state through the network ``U``."""
    return FockStateVector(state.basis, lift_to_fock(U, state.basis) @ state.amplitudes)


@lru_cache(maxsize=64)
def _local_lift(matrix_bytes: bytes, size: int, particles: int):
    M = np.frombuffer(matrix_bytes, dtype=complex).reshape(size, size)
    basis = enumerate_basis(size, particles)
    return basis, lift_to_fock(M, basis)


def apply_mode_unitary(state: FockStateVector, U, modes: Sequence[int]) -> FockStateVector:
    """Apply a small bosonic network acting only on ``modes``.

    Cost scales with the state dimension times the local dimension instead of
    the square of the full dimension.
    """
    basis = state.basis
    M = np.ascontiguousarray(_as_matrix(U), dtype=complex)
    ModeUnitary(M)
    modes = list(modes)
    if basis.statistics is Statistics.FERMION or basis.hardcore:
        return evolve_state(state, ModeUnitary(M).embed(modes, basis.modes))
    out = np.zeros(len(basis), dtype=complex)
    key = M.tobytes()
    for idx, occ in enumerate(basis.elements):
        amp = state.amplitudes[idx]
        if amp == 0:
            continue
        loc = tuple(occ[m] for m in modes)
        local_basis, lifted = _local_lift(key, len(modes), sum(loc))
        col = lifted[:, local_basis.index_of(loc)]
        new = list(occ)
        for r, loc_out in enumerate(local_basis.elements):
            if col[r] == 0:
                continue
            for m, n in zip(modes, loc_out):
                new[m] = n
            out[basis.index_of(new)] += col[r] * amp
    return FockStateVector(basis, out)


def transition_probability(n_in, m_out, U, statistics=Statistics.BOSON) -> float:
    """Probability of detecting pattern ``m_out`` given input pattern ``n_in``.

    Distinguishable particles use the permanent of the element-wise squared
    moduli divided by the output multiplicities.
    """
    stats = Statistics.parse(statistics)
    M = _as_matrix(U)
    n_in, m_out = tuple(n_in), tuple(m_out)
    _validate_patterns(n_in, m_out, M.shape[0])
    if stats is Statistics.DISTINGUISHABLE:
        sub = np.abs(_submatrix(M, n_in, m_out)) ** 2
        return float(np.real(permanent(sub)) / factorial_product(m_out))
    return float(abs(fock_amplitude(M, n_in, m_out, stats)) ** 2)


class OutputDistribution:
    """Probabilities over the output occupation patterns, in basis order."""

    def __init__(self, patterns: Sequence[tuple[int, ...]], probabilities: Sequence[float]):
        self.patterns = tuple(tuple(int(n) for n in p) for p in patterns)
        self.probabilities = np.asarray(probabilities, dtype=float)
        if len(self.patterns) != self.probabilities.shape[0]:
            raise ValueError("pattern and probability counts differ")
        self._index = {p: i for i, p in enumerate(self.patterns)}

    @property
    def entries(self) -> dict[tuple[int, ...], float]:
        return dict(zip(self.patterns, self.probabilities.tolist()))

    def __getitem__(self, pattern) -> float:
        return float(self.probabilities[self._index[tuple(pattern)]])

    def __len__(self):
        return len(self.patterns)

    def items(self):
        return self.entries.items()

    def total(self) -> float:
        return float(self.probabilities.sum())

    def __repr__(self):
        body = ", ".join(f"{p}: {q:.6g}" for p, q in self.items())
        return f"OutputDistribution({{{body}}})"


def output_distribution(n_in, U, statistics=Statistics.BOSON) -> OutputDistribution:
    stats = Statistics.parse(statistics)
    M = _as_matrix(U)
    n_in = tuple(OccupationVector(n_in, stats).occupations)
    ModeUnitary(M)
    basis = enumerate_basis(len(n_in), sum(n_in), stats)
    if stats is Statistics.DISTINGUISHABLE:
        probs = [transition_probability(n_in, m, M, stats) for m in basis]
    else:
        col = lift_to_fock(M, basis)[:, basis.index_of(n_in)]
        probs = np.abs(col) ** 2
    return OutputDistribution(basis.elements, probs)


def state_distribution(state: FockStateVector) -> OutputDistribution:
    return OutputDistribution(state.basis.elements, state.probabilities())


def two_mode_nn_distribution(N: int, R: float = 0.5, statistics=Statistics.BOSON, varphi: float = 0.0) -> OutputDistribution:
    """Output statistics of ``(N, N)`` impinging on a two-mode splitter."""
    return output_distribution((N, N), beamsplitter(R, varphi), statistics)


def binomial_distribution(n: int, p: float = 0.5) -> np.ndarray:
    """Weights of ``k`` successes (k = n .. 0, matching basis order)."""
    ks = np.arange(n, -1, -1)
    return np.array([comb(n, int(k)) * p**k * (1 - p) ** (n - k) for k in ks])


def bunching_enhancement(occupations: Sequence[int], unitary=None, output_mode: int = 0, tol: float = 1e-10) -> float:
    """Bosonic bunching factor ``n! / prod_j r_j!`` for an input ``r``.

    With ``unitary`` the factor is also checked against the ratio of bosonic
    and distinguishable probabilities for all particles ending in
    ``output_mode``; a mismatch raises ``AssertionError``.
    """
    occ = tuple(int(r) for r in occupations)
    n = sum(occ)
    factor = factorial(n) / factorial_product(occ)
    if unitary is not None:
        out = [0] * len(occ)
        out[output_mode] = n
        pb = transition_probability(occ, out, unitary, Statistics.BOSON)
        pd = transition_probability(occ, out, unitary, Statistics.DISTINGUISHABLE)
        if abs(pb - pd * factor) > tol:
            raise AssertionError(f"P_B={pb} differs from P_D*factor={pd * factor}")
    return float(factor)
