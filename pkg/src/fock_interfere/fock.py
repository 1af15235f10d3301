"""Fock bases, many-body state vectors and ladder operators.

Bases hold every occupation pattern of ``N`` particles in ``L`` modes, ordered
lexicographically descending, so ``|2,0>, |1,1>, |0,2>`` for two bosons in two
modes. Fermionic signs follow a Jordan-Wigner ordering by mode index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

DEFAULT_DIMENSION_CAP = 10**6
NORM_TOL = 1e-10


class DimensionError(ValueError):
    """Raised when a requested basis exceeds the dimension cap."""


class BasisMismatchError(ValueError):
    """Raised when two states live on different bases."""


class Statistics(Enum):
    BOSON = "boson"
    FERMION = "fermion"
    DISTINGUISHABLE = "distinguishable"

    @classmethod
    def parse(cls, value: "Statistics | str") -> "Statistics":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown statistics {value!r}; expected one of {valid}") from None


@dataclass(frozen=True)
class OccupationVector:
    """Occupation numbers per mode together with the particle statistics."""

    occupations: tuple[int, ...]
    statistics: Statistics = Statistics.BOSON

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        object.__setattr__(self, "occupations", occ)
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        if len(occ) < 1:
            raise ValueError("an occupation vector needs at least one mode")
        if any(n < 0 for n in occ):
            raise ValueError(f"negative occupation in {occ}")
        if self.statistics is Statistics.FERMION and any(n > 1 for n in occ):
            raise ValueError(f"fermionic occupations must be 0 or 1, got {occ}")

    @property
    def n_modes(self) -> int:
        return len(self.occupations)

    @property
    def n_particles(self) -> int:
        return sum(self.occupations)

    def __iter__(self):
        return iter(self.occupations)

    def __len__(self):
        return len(self.occupations)

    def __getitem__(self, i):
        return self.occupations[i]


def _count(modes: int, particles: int, max_occ: int) -> int:
    if max_occ >= particles:
        return comb(particles + modes - 1, particles)
    # bounded compositions by inclusion-exclusion
    total = 0
    for k in range(modes + 1):
        rest = particles - k * (max_occ + 1)
        if rest < 0:
            break
        total += (-1) ** k * comb(modes, k) * comb(rest + modes - 1, modes - 1)
    return total


def _generate(modes: int, particles: int, max_occ: int) -> Iterator[tuple[int, ...]]:
    if modes == 1:
        if particles <= max_occ:
            yield (particles,)
        return
    for n in range(min(particles, max_occ), -1, -1):
        if particles - n > max_occ * (modes - 1):
            break
        for rest in _generate(modes - 1, particles - n, max_occ):
            yield (n,) + rest


class FockBasis:
    """Ordered list of all occupation patterns with a fixed particle number.

    ``max_occupation`` truncates the local Hilbert space; ``1`` with bosonic
    statistics gives hard-core bosons. Fermions always use ``1``.
    Distinguishable particles share the bosonic pattern list, since their
    detection events are occupation patterns as well.
    """

    def __init__(
        self,
        modes: int,
        particles: int,
        statistics: Statistics | str = Statistics.BOSON,
        max_occupation: int | None = None,
        cap: int = DEFAULT_DIMENSION_CAP,
    ):
        statistics = Statistics.parse(statistics)
        if modes < 1:
            raise ValueError("need at least one mode")
        if particles < 0:
            raise ValueError("particle number must be non-negative")
        if statistics is Statistics.FERMION:
            if particles > modes:
                raise ValueError(f"{particles} fermions do not fit into {modes} modes")
            max_occupation = 1
        if max_occupation is not None and max_occupation < 1:
            raise ValueError("max_occupation must be at least 1")
        limit = max_occupation
        if max_occupation is None or max_occupation > particles:
            max_occupation = max(particles, 1)
        if particles > modes * max_occupation:
            raise ValueError(f"{particles} particles do not fit into {modes} modes")

        size = _count(modes, particles, max_occupation)
        if size > cap:
            raise DimensionError(f"basis dimension {size} exceeds the cap {cap}")

        self.modes = modes
        self.particles = particles
        self.statistics = statistics
        self.max_occupation = max_occupation
        self.occupation_limit = limit
        self.elements: tuple[tuple[int, ...], ...] = tuple(
            _generate(modes, particles, max_occupation)
        )
        self._index = {occ: i for i, occ in enumerate(self.elements)}
        self.occupations = np.array(self.elements, dtype=np.int64).reshape(len(self.elements), modes)

    @property
    def key(self):
        return (self.modes, self.particles, self.statistics, self.max_occupation)

    @property
    def hardcore(self) -> bool:
        return self.statistics is not Statistics.FERMION and self.occupation_limit == 1

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, FockBasis) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (
            f"FockBasis(modes={self.modes}, particles={self.particles}, "
            f"statistics={self.statistics.value}, dim={len(self)})"
        )

    def index_of(self, occupations: Sequence[int] | OccupationVector) -> int:
        try:
            return self._index[tuple(int(n) for n in occupations)]
        except KeyError:
            raise KeyError(f"{tuple(occupations)} is not an element of {self!r}") from None

    def __contains__(self, occupations) -> bool:
        return tuple(int(n) for n in occupations) in self._index

    def element_at(self, index: int) -> OccupationVector:
        return OccupationVector(self.elements[index], self.statistics)

    def with_particles(self, particles: int) -> "FockBasis":
        return enumerate_basis(self.modes, particles, self.statistics, max_occupation=self.occupation_limit)


@lru_cache(maxsize=256)
def _cached_basis(modes, particles, statistics, max_occupation, cap):
    return FockBasis(modes, particles, statistics, max_occupation=max_occupation, cap=cap)


def enumerate_basis(
    modes: int,
    particles: int,
    statistics: Statistics | str = Statistics.BOSON,
    max_occupation: int | None = None,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> FockBasis:
    """Return the (cached) Fock basis of ``particles`` in ``modes`` modes."""
    return _cached_basis(modes, particles, Statistics.parse(statistics), max_occupation, cap)


@dataclass(frozen=True, eq=False)
class FockStateVector:
    basis: FockBasis
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != len(self.basis):
            raise ValueError(f"expected {len(self.basis)} amplitudes, got {amps.shape[0]}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_occupation(
        cls,
        occupations: Sequence[int] | OccupationVector,
        statistics: Statistics | str | None = None,
        basis: FockBasis | None = None,
    ) -> "FockStateVector":
        if statistics is None:
            statistics = getattr(occupations, "statistics", Statistics.BOSON)
        occ = tuple(occupations)
        if basis is None:
            basis = enumerate_basis(len(occ), sum(occ), statistics)
        amps = np.zeros(len(basis), dtype=complex)
        amps[basis.index_of(occ)] = 1.0
        return cls(basis, amps)

    @classmethod
    def from_dict(cls, basis: FockBasis, components: dict) -> "FockStateVector":
        amps = np.zeros(len(basis), dtype=complex)
        for occ, c in components.items():
            amps[basis.index_of(occ)] += c
        return cls(basis, amps)

    @classmethod
    def random(cls, basis: FockBasis, rng: np.random.Generator) -> "FockStateVector":
        amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        return cls(basis, amps / np.linalg.norm(amps))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockStateVector":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return FockStateVector(self.basis, self.amplitudes / nrm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, occupations) -> complex:
        return complex(self.amplitudes[self.basis.index_of(occupations)])

    def probability(self, occupations) -> float:
        return abs(self.amplitude(occupations)) ** 2

    def as_dict(self, tol: float = 0.0) -> dict[tuple[int, ...], complex]:
        return {occ: complex(a) for occ, a in zip(self.basis, self.amplitudes) if abs(a) > tol}

    def __add__(self, other: "FockStateVector") -> "FockStateVector":
        _check_same_basis(self, other)
        return FockStateVector(self.basis, self.amplitudes + other.amplitudes)

    def __mul__(self, scalar) -> "FockStateVector":
        return FockStateVector(self.basis, self.amplitudes * scalar)

    __rmul__ = __mul__


def _check_same_basis(s1: FockStateVector, s2: FockStateVector):
    if s1.basis != s2.basis:
        raise BasisMismatchError(f"{s1.basis!r} != {s2.basis!r}")


def inner_product(s1: FockStateVector, s2: FockStateVector) -> complex:
    """<s1|s2>, conjugate-linear in the first argument."""
    _check_same_basis(s1, s2)
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def _ladder_matrix(source: FockBasis, mode: int, create: bool) -> tuple[FockBasis, np.ndarray]:
    if not 0 <= mode < source.modes:
        raise IndexError(f"mode {mode} out of range for {source.modes} modes")
    target_n = source.particles + (1 if create else -1)
    fermion = source.statistics is Statistics.FERMION
    if target_n < 0:
        return source, np.zeros((len(source), len(source)), dtype=complex)
    if fermion and target_n > source.modes:
        return source, np.zeros((len(source), len(source)), dtype=complex)
    target = source.with_particles(target_n)
    mat = np.zeros((len(target), len(source)), dtype=complex)
    for col, occ in enumerate(source.elements):
        n = occ[mode]
        new_n = n + 1 if create else n - 1
        if new_n < 0 or new_n > target.max_occupation:
            continue
        new = occ[:mode] + (new_n,) + occ[mode + 1 :]
        if fermion:
            factor = -1.0 if sum(occ[:mode]) % 2 else 1.0
        else:
            factor = np.sqrt(n + 1) if create else np.sqrt(n)
        mat[target.index_of(new), col] = factor
    return target, mat


def creation_matrix(source: FockBasis, mode: int) -> tuple[FockBasis, np.ndarray]:
    """Matrix of a^dagger_mode from ``source`` into the N+1 particle basis."""
    return _ladder_matrix(source, mode, create=True)


def annihilation_matrix(source: FockBasis, mode: int) -> tuple[FockBasis, np.ndarray]:
    """Matrix of a_mode from ``source`` into the N-1 particle basis."""
    return _ladder_matrix(source, mode, create=False)


def apply_creation(state: FockStateVector, mode: int) -> FockStateVector:
    """Apply a^dagger_mode; fermionic double occupation yields the zero vector."""
    target, mat = creation_matrix(state.basis, mode)
    return FockStateVector(target, mat @ state.amplitudes)


def apply_annihilation(state: FockStateVector, mode: int) -> FockStateVector:
    """Apply a_mode; an empty mode (or the vacuum) yields the zero vector."""
    target, mat = annihilation_matrix(state.basis, mode)
    return FockStateVector(target, mat @ state.amplitudes)


def hopping_matrix(basis: FockBasis, i: int, j: int) -> np.ndarray:
    """a_i^dagger a_j represented within ``basis``."""
    if basis.particles == 0:
        return np.zeros((len(basis), len(basis)), dtype=complex)
    lower, a_j = annihilation_matrix(basis, j)
    _, a_i_dag = creation_matrix(lower, i)
    return a_i_dag @ a_j


def number_operator(basis: FockBasis, mode: int) -> np.ndarray:
    return np.diag(basis.occupations[:, mode].astype(float))


def mode_occupations(state: FockStateVector) -> np.ndarray:
    """Mean occupation of every mode."""
    return state.probabilities() @ state.basis.occupations


class DensityMatrix:
    """Density operator over a list of labelled basis states.

    ``labels`` are occupation tuples (or any hashable labels); for full Fock
    spaces they are the basis elements.
    """

    def __init__(self, matrix, labels: Sequence | None = None, tol: float = NORM_TOL, validate: bool = True):
        mat = np.array(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        self.matrix = mat
        self.labels = tuple(labels) if labels is not None else tuple(range(mat.shape[0]))
        if len(self.labels) != mat.shape[0]:
            raise ValueError("label count does not match matrix dimension")
        if validate:
            self.check(tol)

    @classmethod
    def from_state(cls, state: FockStateVector) -> "DensityMatrix":
        amps = state.amplitudes
        return cls(np.outer(amps, amps.conj()), labels=state.basis.elements)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def check(self, tol: float = NORM_TOL):
        m = self.matrix
        if np.max(np.abs(m - m.conj().T), initial=0.0) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1) > tol:
            raise ValueError(f"density matrix trace {np.trace(m).real} != 1")
        if self.dim and np.linalg.eigvalsh(m).min() < -tol:
            raise ValueError("density matrix has negative eigenvalues")

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.matrix, self.matrix)))

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, purity={self.purity():.6g})"
