"""Partial distinguishability and shot-to-shot phase noise in two-particle interference.

Partial overlap is modelled by giving the particle in mode 2 an admixture
``sin(theta)`` of an orthogonal internal label. Phase noise averages the
two-particle output state over the splitter phase ``varphi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .fock import DensityMatrix, FockStateVector, Statistics, enumerate_basis
from .interference import _check_R, beamsplitter, evolve_state

HOM_LABELS = ((2, 0), (1, 1), (0, 2))


def _check_theta(theta: float):
    if not (0.0 <= theta <= np.pi / 2 + 1e-15):
        raise ValueError(f"overlap angle must lie in [0, pi/2], got {theta}")


def partial_overlap_probs(R: float, theta: float, statistics=Statistics.BOSON) -> tuple[float, float, float]:
    """Closed-form ``(P(2,0), P(1,1), P(0,2))`` for overlap angle ``theta``."""
    _check_R(R)
    _check_theta(theta)
    stats = Statistics.parse(statistics)
    T = 1.0 - R
    s2 = np.sin(theta) ** 2
    c2 = np.cos(theta) ** 2
    if stats is Statistics.BOSON:
        bunch = R * T * (1 + c2)
        coinc = (R - T) ** 2 + 2 * R * T * s2
    elif stats is Statistics.FERMION:
        bunch = R * T * s2
        coinc = R + T - 2 * R * T * s2
    else:
        bunch = R * T
        coinc = R**2 + T**2
    return float(bunch), float(coinc), float(bunch)


def simulate_partial_overlap(R: float, theta: float, statistics=Statistics.BOSON, varphi: float = 0.0):
    """Same probabilities from a four-mode Fock simulation.

    Modes are ``(1, 2, 1~, 2~)``: the tilde modes carry the orthogonal
    internal label and see the same splitter.
    """
    _check_R(R)
    _check_theta(theta)
    stats = Statistics.parse(statistics)
    basis = enumerate_basis(4, 2, stats)
    # a1^dag (cos a2^dag + sin a2~^dag)|0>; for fermions the JW order keeps both kets positive
    psi = FockStateVector.from_dict(
        basis, {(1, 1, 0, 0): np.cos(theta), (1, 0, 0, 1): np.sin(theta)}
    )
    out = evolve_state(psi, beamsplitter(R, varphi).kron_identity(2))
    probs = out.probabilities()
    p = {label: 0.0 for label in HOM_LABELS}
    for occ, q in zip(basis.elements, probs):
        p[(occ[0] + occ[2], occ[1] + occ[3])] += q
    return float(p[(2, 0)]), float(p[(1, 1)]), float(p[(0, 2)])


def overlap_from_dip(p11: float, R: float = 0.5, tol: float = 1e-12) -> float:
    """Invert the bosonic coincidence probability for the overlap angle."""
    _check_R(R)
    T = 1.0 - R
    if R * T == 0:
        raise ValueError("a splitter with R*T = 0 carries no overlap information")
    s2 = (p11 - (R - T) ** 2) / (2 * R * T)
    if s2 < -tol or s2 > 1 + tol:
        lo, hi = (R - T) ** 2, (R - T) ** 2 + 2 * R * T
        raise ValueError(f"P(1,1)={p11} outside the achievable range [{lo}, {hi}]")
    return float(np.arcsin(np.sqrt(min(max(s2, 0.0), 1.0))))


class PhaseKind(Enum):
    DELTA = "delta"
    UNIFORM = "uniform"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class PhaseDistribution:
    """Distribution of the splitter phase ``varphi``.

    ``moment(k)`` is the average of ``exp(-i k varphi)``; ``alpha`` is the
    first moment.
    """

    kind: PhaseKind
    center: float = 0.0
    width: float = 0.0
    samples: tuple[float, ...] = ()
    weights: tuple[float, ...] = ()

    @classmethod
    def delta(cls, phi0: float = 0.0) -> "PhaseDistribution":
        return cls(PhaseKind.DELTA, center=float(phi0))

    @classmethod
    def uniform(cls, width: float, center: float = 0.0) -> "PhaseDistribution":
        if width < 0:
            raise ValueError("width must be non-negative")
        return cls(PhaseKind.UNIFORM, center=float(center), width=float(width))

    @classmethod
    def discrete(cls, samples: Sequence[float], weights: Sequence[float] | None = None) -> "PhaseDistribution":
        samples = tuple(float(s) for s in samples)
        if not samples:
            raise ValueError("need at least one sample")
        w = np.ones(len(samples)) if weights is None else np.asarray(weights, dtype=float)
        if w.shape != (len(samples),) or np.any(w < 0) or w.sum() <= 0:
            raise ValueError("weights must be non-negative, one per sample, not all zero")
        return cls(PhaseKind.DISCRETE, samples=samples, weights=tuple((w / w.sum()).tolist()))

    def moment(self, k: int = 1) -> complex:
        if self.kind is PhaseKind.DELTA:
            return complex(np.exp(-1j * k * self.center))
        if self.kind is PhaseKind.UNIFORM:
            # np.sinc(x) = sin(pi x) / (pi x)
            return complex(np.exp(-1j * k * self.center) * np.sinc(k * self.width / (2 * np.pi)))
        s = np.asarray(self.samples)
        return complex(np.dot(self.weights, np.exp(-1j * k * s)))

    @property
    def alpha(self) -> complex:
        return self.moment(1)


def hom_output_state(R: float, varphi: float = 0.0) -> FockStateVector:
    """Bosonic (1,1) input after the splitter, on ``|2,0>, |1,1>, |0,2>``."""
    return evolve_state(FockStateVector.from_occupation((1, 1)), beamsplitter(R, varphi))


def rho_alpha(R: float, alpha: complex) -> DensityMatrix:
    """Closed-form phase-averaged output state with coherence factor ``alpha``.

    Entries are ``<i|rho|j>`` on ``|2,0>, |1,1>, |0,2>``; the two-quantum
    coherence carries ``alpha**2``, which is exact whenever the second phase
    moment equals the square of the first (e.g. sharp phases, or full
    dephasing with both moments zero).
    """
    _check_R(R)
    if abs(alpha) > 1 + 1e-12:
        raise ValueError("|alpha| cannot exceed 1")
    T = 1.0 - R
    Q = T - R
    b = 2 * R * T
    s = np.sqrt(b)
    a, ac = complex(alpha), complex(np.conj(alpha))
    m = np.array(
        [
            [b, 1j * s * Q * ac, b * ac**2],
            [-1j * s * Q * a, Q**2, -1j * s * Q * ac],
            [b * a**2, 1j * s * Q * a, b],
        ]
    )
    return DensityMatrix(m, labels=HOM_LABELS)


def phase_averaged_state(R: float, dist: PhaseDistribution) -> DensityMatrix:
    """Exact average of the pure output projector over ``dist``.

    Uses the first and second phase moments of the distribution, so it is
    valid for any distribution, not only those with ``moment(2) == alpha**2``.
    """
    _check_R(R)
    T = 1.0 - R
    Q = T - R
    b = 2 * R * T
    s = np.sqrt(b)
    m1 = dist.moment(1)
    m2 = dist.moment(2)
    # <2,0|rho|1,1> averages exp(+i varphi), i.e. conj(m1)
    m = np.array(
        [
            [b, 1j * s * Q * np.conj(m1), b * np.conj(m2)],
            [-1j * s * Q * m1, Q**2, -1j * s * Q * np.conj(m1)],
            [b * m2, 1j * s * Q * m1, b],
        ]
    )
    return DensityMatrix(m, labels=HOM_LABELS)


def sampled_average_state(R: float, phases: Sequence[float], weights: Sequence[float] | None = None) -> DensityMatrix:
    """Weighted average of pure projectors built by Fock simulation per phase."""
    w = np.ones(len(phases)) if weights is None else np.asarray(weights, dtype=float)
    w = w / w.sum()
    rho = np.zeros((3, 3), dtype=complex)
    for phi, wk in zip(phases, w):
        amps = hom_output_state(R, phi).amplitudes
        rho += wk * np.outer(amps, amps.conj())
    return DensityMatrix(rho, labels=HOM_LABELS)
