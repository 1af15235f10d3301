"""Particle and mode entanglement of few-boson states.

Particle entanglement of two bosons is read off the symmetric amplitude
matrix ``v`` of the first-quantised wavefunction
``|psi> = sum_qj v[q, j] |x_q>_1 |x_j>_2``. Its Takagi factorisation
``v = W diag(s) W^T`` gives the Schmidt coefficients ``s``; more than two
non-zero coefficients means the particles are entangled.

Mode entanglement is measured on a bipartition of the modes through the
reduced density matrix, its entropies and the twin-copy parity protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.linalg import sqrtm
from scipy.optimize import minimize, minimize_scalar

from .fock import DensityMatrix, FockBasis, FockStateVector, Statistics, enumerate_basis
from .hubbard import Evolver, HubbardParams, build_hamiltonian
from .interference import ModeUnitary, apply_mode_unitary, beamsplitter, evolve_state

SCHMIDT_TOL = 1e-8
SYMMETRY_TOL = 1e-12
CSOP_MARGIN = 1e-3

# twin-copy splitters, rows are inputs (copy 1 site, copy 2 site)
TWIN_SPLITTER = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
TUNNEL_SPLITTER = np.array([[1, 1j], [1j, 1]], dtype=complex) / np.sqrt(2)


class SymmetryError(ValueError):
    """Raised when a two-boson amplitude matrix is not symmetric."""


class CutError(ValueError):
    """Raised when a bipartition does not split the modes cleanly."""


# --- two-particle amplitudes --------------------------------------------------------


@dataclass(frozen=True)
class TwoParticleAmplitude:
    """Symmetric amplitude matrix ``v`` of a two-boson state, Frobenius-normalised."""

    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {v.shape}")
        if np.max(np.abs(v - v.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.abs(v).max()):
            raise SymmetryError("two-boson amplitudes must satisfy v = v^T")
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("zero amplitude matrix")
        v = (v + v.T) / (2 * norm)
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.v.shape[0]

    @classmethod
    def from_fock_state(cls, state: FockStateVector) -> "TwoParticleAmplitude":
        """Amplitudes of a bosonic two-particle Fock state.

        ``|1_q 1_j>`` is the symmetrised ``(|q, j> + |j, q>)/sqrt(2)`` and
        ``|2_q>`` is ``|q, q>``.
        """
        basis = state.basis
        if basis.particles != 2 or basis.statistics is not Statistics.BOSON:
            raise ValueError("need a bosonic two-particle state")
        d = basis.modes
        v = np.zeros((d, d), dtype=complex)
        for occ, c in zip(basis.elements, state.amplitudes):
            modes = [m for m, n in enumerate(occ) for _ in range(n)]
            q, j = modes
            if q == j:
                v[q, q] = c
            else:
                v[q, j] = v[j, q] = c / np.sqrt(2)
        return cls(v)

    @classmethod
    def from_product(cls, a: Sequence[complex], b: Sequence[complex]) -> "TwoParticleAmplitude":
        """Symmetrised product of single-particle states ``a`` and ``b``."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        return cls(np.outer(a, b) + np.outer(b, a))

    def to_fock_state(self) -> FockStateVector:
        basis = enumerate_basis(self.dim, 2)
        comps = {}
        for q in range(self.dim):
            occ = [0] * self.dim
            occ[q] = 2
            comps[tuple(occ)] = self.v[q, q]
            for j in range(q + 1, self.dim):
                occ = [0] * self.dim
                occ[q] = occ[j] = 1
                comps[tuple(occ)] = np.sqrt(2) * self.v[q, j]
        return FockStateVector.from_dict(basis, comps)

    def transformed(self, unitary) -> "TwoParticleAmplitude":
        """Amplitudes after the single-particle map ``a_j^dag -> sum_k M[j, k] b_k^dag``."""
        M = unitary.matrix if isinstance(unitary, ModeUnitary) else np.asarray(unitary, dtype=complex)
        return TwoParticleAmplitude(M.T @ self.v @ M)


# --- Schmidt decomposition ----------------------------------------------------------


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Takagi factorisation ``v = W diag(coefficients) W^T``.

    Coefficients are non-negative and descending; column ``k`` of ``basis``
    is the single-particle state attached to coefficient ``k``.
    """

    coefficients: np.ndarray
    basis: np.ndarray
    rank: int
    tol: float

    def reconstruct(self) -> np.ndarray:
        W = self.basis
        return (W * self.coefficients) @ W.T


def _group_degenerate(s: np.ndarray, tol: float) -> list[np.ndarray]:
    groups = []
    start = 0
    for k in range(1, len(s) + 1):
        if k == len(s) or abs(s[k] - s[start]) > tol * max(1.0, s[start]):
            groups.append(np.arange(start, k))
            start = k
    return groups


def takagi(v: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Takagi factorisation of a complex symmetric matrix.

    From the SVD ``v = U diag(s) V^H`` the matrix ``Z = V^H conj(U)`` is a
    symmetric unitary that commutes with ``diag(s)``. Its principal square
    root on each degenerate block, ``S``, gives ``W = U S``.
    """
    v = np.asarray(v, dtype=complex)
    U, s, Vh = np.linalg.svd(v)
    Z = Vh @ U.conj()
    S = np.eye(len(s), dtype=complex)
    for block in _group_degenerate(s, tol):
        if s[block[0]] <= tol:
            continue  # null space, any unitary completes W
        sub = Z[np.ix_(block, block)]
        S[np.ix_(block, block)] = sqrtm(sub)
    W = U @ S
    return s, W


def schmidt_spectrum(v: TwoParticleAmplitude | np.ndarray, tol: float = SCHMIDT_TOL) -> SchmidtSpectrum:
    """Schmidt coefficients and single-particle basis of a two-boson state."""
    amp = v if isinstance(v, TwoParticleAmplitude) else TwoParticleAmplitude(v)
    s, W = takagi(amp.v)
    rank = int(np.sum(s > tol))
    return SchmidtSpectrum(coefficients=s, basis=W, rank=max(rank, 1), tol=tol)


class ParticleClass(Enum):
    SAME_STATE = "same-state"
    SYMMETRIZED_PRODUCT = "symmetrized-product"
    ENTANGLED = "entangled"


@dataclass(frozen=True)
class ParticleVerdict:
    classification: ParticleClass
    rank: int
    orthogonal: bool  # constituents of a rank-2 state are orthogonal

    @property
    def entangled(self) -> bool:
        return self.classification is ParticleClass.ENTANGLED


def particle_entangled(v: TwoParticleAmplitude | np.ndarray, tol: float = SCHMIDT_TOL) -> ParticleVerdict:
    """Classify by Schmidt rank: 1 same state, 2 symmetrised product, more entangled.

    A rank-2 state built from non-orthogonal constituents is still reported
    as a symmetrised product; ``orthogonal`` tells whether it also passes the
    projector criterion of :func:`csop_check`.
    """
    spec = schmidt_spectrum(v, tol)
    if spec.rank == 1:
        return ParticleVerdict(ParticleClass.SAME_STATE, 1, False)
    if spec.rank == 2:
        s1, s2 = spec.coefficients[:2]
        return ParticleVerdict(ParticleClass.SYMMETRIZED_PRODUCT, 2, bool(abs(s1 - s2) <= tol))
    return ParticleVerdict(ParticleClass.ENTANGLED, spec.rank, False)


# --- projector criterion ------------------------------------------------------------


def csop_expectation(v: TwoParticleAmplitude | np.ndarray, projector: np.ndarray) -> float:
    """``<psi| P (x) (1-P) + (1-P) (x) P |psi>`` for the two-boson amplitudes ``v``."""
    amp = v.v if isinstance(v, TwoParticleAmplitude) else np.asarray(v, dtype=complex)
    P = np.asarray(projector, dtype=complex)
    Q = np.eye(P.shape[0]) - P
    # (A (x) B) vec(v) = vec(A v B^T) with row-major vec
    ev = np.vdot(amp, P @ amp @ Q.T + Q @ amp @ P.T)
    return float(ev.real)


def _rank_one_expectation(v: np.ndarray, p: np.ndarray) -> float:
    # P = |p><p| with |p| = 1
    vp = v.conj().T @ p
    return float(2 * np.vdot(vp, vp).real - 2 * abs(p.conj() @ v @ p.conj()) ** 2)


class CSOPStatus(Enum):
    PROJECTOR = "projector"
    SAME_STATE = "same-state"
    NONE = "none"


@dataclass(frozen=True)
class CSOPResult:
    status: CSOPStatus
    projector: np.ndarray | None = None
    expectation: float | None = None
    best_found: float | None = None  # largest expectation seen by the search

    @property
    def found(self) -> bool:
        return self.status is CSOPStatus.PROJECTOR


def csop_max_search(v: np.ndarray, restarts: int = 64, seed: int = 0) -> tuple[float, np.ndarray]:
    """Largest expectation over rank-1 projectors from seeded local searches."""
    v = np.asarray(v, dtype=complex)
    d = v.shape[0]
    rng = np.random.default_rng(seed)

    def negf(x):
        p = x[:d] + 1j * x[d:]
        n = np.linalg.norm(p)
        if n == 0:
            return 0.0
        return -_rank_one_expectation(v, p / n)

    best, best_p = -np.inf, None
    starts = [np.concatenate([e, np.zeros(d)]) for e in np.eye(d)]
    starts += [rng.normal(size=2 * d) for _ in range(restarts)]
    for x0 in starts:
        res = minimize(negf, x0, method="L-BFGS-B")
        if -res.fun > best:
            best = -res.fun
            p = res.x[:d] + 1j * res.x[d:]
            best_p = p / np.linalg.norm(p)
    return float(best), best_p


def csop_check(
    v: TwoParticleAmplitude | np.ndarray,
    tol: float = SCHMIDT_TOL,
    restarts: int = 64,
    seed: int = 0,
) -> CSOPResult:
    """Look for a projector ``P`` certifying that neither boson is entangled.

    Rank 1 reports the same-state case. Rank 2 with equal coefficients
    gives ``P = |a><a|`` with ``a = (w_1 + i w_2)/sqrt(2)`` built from the
    Schmidt basis. Otherwise no projector exists; a seeded numerical search
    records the best expectation reached as supporting evidence.
    """
    amp = v if isinstance(v, TwoParticleAmplitude) else TwoParticleAmplitude(v)
    spec = schmidt_spectrum(amp, tol)
    if spec.rank == 1:
        return CSOPResult(CSOPStatus.SAME_STATE)
    if spec.rank == 2 and abs(spec.coefficients[0] - spec.coefficients[1]) <= tol:
        w1, w2 = spec.basis[:, 0], spec.basis[:, 1]
        a = (w1 + 1j * w2) / np.sqrt(2)
        P = np.outer(a, a.conj())
        return CSOPResult(CSOPStatus.PROJECTOR, projector=P, expectation=csop_expectation(amp, P))
    best, _ = csop_max_search(amp.v, restarts=restarts, seed=seed)
    return CSOPResult(CSOPStatus.NONE, best_found=best)


# --- bipartitions -------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteCut:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(int(m) for m in self.left))
        right = tuple(sorted(int(m) for m in self.right))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if not left or not right:
            raise CutError("both sides of a cut must hold at least one mode")
        if set(left) & set(right):
            raise CutError(f"modes {sorted(set(left) & set(right))} sit on both sides")

    @classmethod
    def from_left(cls, left: Sequence[int], modes: int) -> "BipartiteCut":
        left = tuple(left)
        return cls(left, tuple(m for m in range(modes) if m not in left))

    @property
    def modes(self) -> int:
        return len(self.left) + len(self.right)

    def swapped(self) -> "BipartiteCut":
        return BipartiteCut(self.right, self.left)

    def check(self, modes: int):
        if sorted(self.left + self.right) != list(range(modes)):
            raise CutError(f"cut {self.left} | {self.right} does not cover modes 0..{modes - 1}")


def _reorder_sign(occ: Sequence[int], cut: BipartiteCut) -> int:
    # sign from moving the left fermions in front of the right ones
    swaps = 0
    for l in cut.left:
        if occ[l]:
            swaps += sum(occ[r] for r in cut.right if r < l)
    return -1 if swaps % 2 else 1


def _split_amplitudes(state: FockStateVector, cut: BipartiteCut):
    basis = state.basis
    cut.check(basis.modes)
    fermion = basis.statistics is Statistics.FERMION
    lefts: dict[tuple, int] = {}
    rights: dict[tuple, int] = {}
    entries = []
    for occ, c in zip(basis.elements, state.amplitudes):
        lo = tuple(occ[m] for m in cut.left)
        ro = tuple(occ[m] for m in cut.right)
        sign = _reorder_sign(occ, cut) if fermion else 1
        entries.append((lefts.setdefault(lo, len(lefts)), rights.setdefault(ro, len(rights)), sign * c))
    psi = np.zeros((len(lefts), len(rights)), dtype=complex)
    for i, j, c in entries:
        psi[i, j] += c
    # label order: total particle number descending, then lexicographic descending
    order = sorted(lefts, key=lambda o: (-sum(o), tuple(-n for n in o)))
    perm = [lefts[o] for o in order]
    return psi[perm], order


def reduced_density_matrix(state: FockStateVector, cut: BipartiteCut | Sequence[int]) -> DensityMatrix:
    """Density matrix of the left modes of ``cut``; labels are their occupations.

    A plain sequence of modes is taken as the left side of the cut.
    """
    if not isinstance(cut, BipartiteCut):
        cut = BipartiteCut.from_left(cut, state.basis.modes)
    norm = state.norm()
    if abs(norm - 1) > 1e-10:
        raise ValueError(f"state must be normalised, norm is {norm}")
    psi, labels = _split_amplitudes(state, cut)
    return DensityMatrix(psi @ psi.conj().T, labels=labels)


def entropies(rho: DensityMatrix | np.ndarray) -> tuple[float, float]:
    """``(S_vN, S_2)`` in nats, with ``S_2 = -log tr(rho^2)`` so both are non-negative."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    lam = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    lam = lam / lam.sum()
    nz = lam[lam > 0]
    s_vn = float(-np.sum(nz * np.log(nz)))
    s2 = float(-np.log(np.sum(lam**2)))
    return max(s_vn, 0.0), max(s2, 0.0)


# --- twin-copy protocol -------------------------------------------------------------


def _as_boson_state(state: FockStateVector) -> FockStateVector:
    basis = state.basis
    if basis.statistics is not Statistics.BOSON:
        raise ValueError("the twin-copy protocol is implemented for bosons")
    if basis.occupation_limit is None:
        return state
    full = enumerate_basis(basis.modes, basis.particles)
    amps = np.zeros(len(full), dtype=complex)
    for occ, c in zip(basis.elements, state.amplitudes):
        amps[full.index_of(occ)] = c
    return FockStateVector(full, amps)


def twin_state(state: FockStateVector) -> FockStateVector:
    """``|psi> (x) |psi>`` on ``2L`` modes; copy 2 occupies modes ``L..2L-1``."""
    state = _as_boson_state(state)
    basis = state.basis
    L, N = basis.modes, basis.particles
    twin = enumerate_basis(2 * L, 2 * N)
    amps = np.zeros(len(twin), dtype=complex)
    nz = [(occ, c) for occ, c in zip(basis.elements, state.amplitudes) if c != 0]
    for o1, c1 in nz:
        for o2, c2 in nz:
            amps[twin.index_of(o1 + o2)] = c1 * c2
    return FockStateVector(twin, amps)


def hubbard_bs_phase_correction(twin: FockStateVector, sites: Sequence[int] | None = None) -> FockStateVector:
    """Apply ``exp(-i pi/2 n)`` to the copy-2 partner of each site in ``sites``.

    Followed by the tunneling splitter this reproduces the ideal twin
    splitter up to a phase on the copy-2 output, which parity cannot see.
    """
    L = twin.basis.modes // 2
    sites = range(L) if sites is None else list(sites)
    n2 = twin.basis.occupations[:, [L + s for s in sites]].sum(axis=1)
    return FockStateVector(twin.basis, twin.amplitudes * np.exp(-0.5j * np.pi * n2))


def _parity_after_splitters(twin: FockStateVector, sites: Sequence[int], splitter: np.ndarray) -> float:
    L = twin.basis.modes // 2
    out = twin
    for s in sites:
        out = apply_mode_unitary(out, splitter, [s, L + s])
    n2 = out.basis.occupations[:, [L + s for s in sites]].sum(axis=1)
    parity = np.where(n2 % 2 == 0, 1.0, -1.0)
    return float(np.dot(out.probabilities(), parity))


def twin_parity_purity(
    state: FockStateVector,
    sites: Sequence[int] | None = None,
    splitter: str = "ideal",
    corrected: bool = True,
) -> float:
    """Purity of the reduced state on ``sites`` from the twin-copy parity.

    Each site is interfered with its partner in a second copy and the
    parity of the copy-2 occupation on ``sites`` is averaged. ``sites=None``
    takes the whole system. With ``splitter="tunneling"`` the splitter is the
    one generated by tunneling between the copies; ``corrected=False`` then
    skips the compensating phase and yields a lower bound on the purity.
    """
    L = state.basis.modes
    sites = list(range(L)) if sites is None else sorted(int(s) for s in sites)
    if not sites or any(s < 0 or s >= L for s in sites):
        raise CutError(f"sites {sites} are not a non-empty subset of 0..{L - 1}")
    twin = twin_state(state)
    if splitter == "ideal":
        return _parity_after_splitters(twin, sites, TWIN_SPLITTER)
    if splitter == "tunneling":
        if corrected:
            twin = hubbard_bs_phase_correction(twin, sites)
        return _parity_after_splitters(twin, sites, TUNNEL_SPLITTER)
    raise ValueError(f"unknown splitter {splitter!r}; expected 'ideal' or 'tunneling'")


def phase_twisted_overlap(state: FockStateVector, sites: Sequence[int]) -> float:
    """``tr(rho e^{i pi n/2} rho e^{-i pi n/2})`` on ``sites``, with ``n`` their total number."""
    rho = reduced_density_matrix(state, list(sites))
    n = np.array([sum(lab) for lab in rho.labels])
    D = np.exp(0.5j * np.pi * n)
    twisted = (D[:, None] * rho.matrix) * D.conj()[None, :]
    return float(np.trace(rho.matrix @ twisted).real)


# --- applications -------------------------------------------------------------------


@dataclass(frozen=True)
class QuenchTrace:
    times: np.ndarray
    s2: np.ndarray
    t_max: float
    s2_max: float
    t_dip: float | None  # local minimum of S_2 after the first maximum
    s2_dip: float | None


def _double_well_s2(evolver: Evolver, psi0: np.ndarray, basis: FockBasis):
    cut = BipartiteCut((0,), (1,))

    def s2(t: float) -> float:
        st = FockStateVector(basis, evolver.propagate(psi0, t))
        return entropies(reduced_density_matrix(st, cut))[1]

    return s2


def quench_entropy_trace(J: float, U: float, times: Sequence[float]) -> QuenchTrace:
    """Half-system ``S_2(t)`` for two bosons on two sites starting in ``|1,1>``.

    The first maximum and the following local minimum are located on the
    grid and refined by bounded scalar minimisation.
    """
    if J <= 0:
        raise ValueError("tunneling J must be positive")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 3:
        raise ValueError("need at least three time points")
    params = HubbardParams(J=J, U=U, L=2, N=2)
    basis = params.basis()
    ev = Evolver(build_hamiltonian(params, basis))
    psi0 = FockStateVector.from_occupation((1, 1)).amplitudes
    f = _double_well_s2(ev, psi0, basis)
    s2 = np.array([f(t) for t in times])

    def refine(k: int, sign: float) -> tuple[float, float]:
        lo, hi = times[max(k - 1, 0)], times[min(k + 1, len(times) - 1)]
        res = minimize_scalar(lambda t: sign * f(t), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
        t = float(res.x)
        return t, f(t)

    peaks = [k for k in range(1, len(times) - 1) if s2[k] >= s2[k - 1] and s2[k] >= s2[k + 1]]
    k_max = peaks[0] if peaks else int(np.argmax(s2))
    t_max, s2_max = refine(k_max, -1.0)
    dips = [k for k in range(k_max + 1, len(times) - 1) if s2[k] <= s2[k - 1] and s2[k] <= s2[k + 1]]
    t_dip = s2_dip = None
    if dips:
        t_dip, s2_dip = refine(dips[0], 1.0)
    return QuenchTrace(times, s2, t_max, s2_max, t_dip, s2_dip)


SPIN_LABELS = ("up,down", "down,up", "up,up", "down,down")


@dataclass(frozen=True)
class PostselectionResult:
    probability: float  # one atom per well
    spin_state: np.ndarray  # amplitudes over (|up,down>, |down,up>, |up,up>, |down,down>), left well first
    singlet_overlap: float
    conditional: TwoParticleAmplitude
    unconditioned: TwoParticleAmplitude


def postselected_spin_entanglement(R: float = 0.5, varphi: float = 0.0) -> PostselectionResult:
    """Two atoms of opposite spin meet on a splitter; keep runs with one atom per well.

    Modes are ``(L up, L down, R up, R down)``; the input holds spin up in
    the left well and spin down in the right one.
    """
    bs = beamsplitter(R, varphi).matrix
    U = ModeUnitary(np.kron(bs, np.eye(2)))
    psi = evolve_state(FockStateVector.from_occupation((1, 0, 0, 1)), U)
    spins = {(1, 0, 0, 1): 0, (0, 1, 1, 0): 1, (1, 0, 1, 0): 2, (0, 1, 0, 1): 3}
    keep = np.array([occ in spins for occ in psi.basis.elements])
    cond = np.zeros(4, dtype=complex)
    for occ, c in zip(psi.basis.elements, psi.amplitudes):
        if occ in spins:
            cond[spins[occ]] = c
    prob = float(np.sum(np.abs(cond) ** 2))
    cond_state = FockStateVector(psi.basis, np.where(keep, psi.amplitudes, 0))
    spin = cond / np.sqrt(prob)
    singlet = np.array([1, -1, 0, 0]) / np.sqrt(2)
    return PostselectionResult(
        probability=prob,
        spin_state=spin,
        singlet_overlap=float(abs(np.vdot(singlet, spin))),
        conditional=TwoParticleAmplitude.from_fock_state(cond_state.normalized()),
        unconditioned=TwoParticleAmplitude.from_fock_state(psi),
    )


def phi_x_amplitude() -> TwoParticleAmplitude:
    """Spatially and spin-symmetrised pair on ``(L up, L down, R up, R down)``."""
    v = np.zeros((4, 4))
    for a, b in [(0, 3), (1, 2), (2, 1), (3, 0)]:
        v[a, b] = 0.5
    return TwoParticleAmplitude(v)


__all__ = [
    "SCHMIDT_TOL",
    "TWIN_SPLITTER",
    "TUNNEL_SPLITTER",
    "SymmetryError",
    "CutError",
    "TwoParticleAmplitude",
    "SchmidtSpectrum",
    "takagi",
    "schmidt_spectrum",
    "ParticleClass",
    "ParticleVerdict",
    "particle_entangled",
    "csop_expectation",
    "csop_max_search",
    "CSOPStatus",
    "CSOPResult",
    "csop_check",
    "BipartiteCut",
    "reduced_density_matrix",
    "entropies",
    "twin_state",
    "hubbard_bs_phase_correction",
    "twin_parity_purity",
    "phase_twisted_overlap",
    "QuenchTrace",
    "quench_entropy_trace",
    "SPIN_LABELS",
    "PostselectionResult",
    "postselected_spin_entanglement",
    "phi_x_amplitude",
]
