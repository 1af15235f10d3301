import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_unitary
from fock_interfere.entanglement import (
    BipartiteCut,
    CSOPStatus,
    CutError,
    ParticleClass,
    SymmetryError,
    TwoParticleAmplitude,
    csop_check,
    csop_expectation,
    csop_max_search,
    entropies,
    hubbard_bs_phase_correction,
    particle_entangled,
    phase_twisted_overlap,
    phi_x_amplitude,
    postselected_spin_entanglement,
    quench_entropy_trace,
    reduced_density_matrix,
    schmidt_spectrum,
    takagi,
    twin_parity_purity,
    twin_state,
)
from fock_interfere.fock import DensityMatrix, FockStateVector, enumerate_basis, hopping_matrix
from fock_interfere.hubbard import Evolver, HubbardParams, build_hamiltonian, doublon_walk, ground_state
from fock_interfere.interference import beamsplitter, evolve_state

LEFT, RIGHT = np.array([1, 0]), np.array([0, 1])


@pytest.fixture
def S():
    return TwoParticleAmplitude.from_fock_state(FockStateVector.from_occupation((1, 1)))


@pytest.fixture
def plus():
    out = evolve_state(FockStateVector.from_occupation((1, 1)), beamsplitter(0.5))
    return TwoParticleAmplitude.from_fock_state(out)


def test_amplitude_validation():
    with pytest.raises(SymmetryError):
        TwoParticleAmplitude(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        TwoParticleAmplitude(np.zeros((2, 2)))
    v = TwoParticleAmplitude(np.array([[3, 0], [0, 4]]))
    assert np.linalg.norm(v.v) == pytest.approx(1)


def test_fock_round_trip(rng):
    s = FockStateVector.random(enumerate_basis(4, 2), rng)
    v = TwoParticleAmplitude.from_fock_state(s)
    assert np.allclose(v.to_fock_state().amplitudes, s.amplitudes)


def test_hom_input_spectrum(S):
    spec = schmidt_spectrum(S)
    assert spec.rank == 2
    assert np.allclose(spec.coefficients, [1 / np.sqrt(2)] * 2)
    # the (L +- R)/sqrt(2) basis with signed coefficients +-1/sqrt(2)
    xp, xm = (LEFT + RIGHT) / np.sqrt(2), (LEFT - RIGHT) / np.sqrt(2)
    signed = (np.outer(xp, xp) - np.outer(xm, xm)) / np.sqrt(2)
    assert np.allclose(signed, S.v)
    assert np.allclose(spec.reconstruct(), S.v, atol=1e-12)


def test_hom_output_spectrum(plus):
    assert schmidt_spectrum(plus).rank == 2
    assert particle_entangled(plus) .classification is ParticleClass.SYMMETRIZED_PRODUCT


def test_localized_doublon_rank_one():
    v = TwoParticleAmplitude.from_fock_state(FockStateVector.from_occupation((0, 2, 0)))
    assert schmidt_spectrum(v).rank == 1
    assert particle_entangled(v).classification is ParticleClass.SAME_STATE
    assert csop_check(v).status is CSOPStatus.SAME_STATE


def test_phi_x():
    v = phi_x_amplitude()
    spec = schmidt_spectrum(v)
    assert spec.rank == 4
    assert np.allclose(spec.coefficients, 0.5, atol=1e-10)
    assert particle_entangled(v).entangled


def test_walked_doublon_entangled():
    v = TwoParticleAmplitude.from_fock_state(doublon_walk(1, 20, 7.5, 7))
    verdict = particle_entangled(v)
    assert verdict.entangled and verdict.rank >= 3


def test_free_walk_stays_symmetrized_product():
    p = HubbardParams(1, 0, 6, 2)
    basis = p.basis()
    ev = Evolver(build_hamiltonian(p, basis))
    psi0 = FockStateVector.from_occupation((0, 1, 0, 1, 0, 0)).amplitudes
    for t in np.linspace(0, 4, 9):
        v = TwoParticleAmplitude.from_fock_state(FockStateVector(basis, ev.propagate(psi0, t)))
        verdict = particle_entangled(v)
        assert verdict.classification is ParticleClass.SYMMETRIZED_PRODUCT and verdict.orthogonal


def test_interacting_walk_becomes_entangled():
    p = HubbardParams(1, 3, 6, 2)
    basis = p.basis()
    ev = Evolver(build_hamiltonian(p, basis))
    psi0 = FockStateVector.from_occupation((0, 0, 1, 1, 0, 0)).amplitudes
    v = TwoParticleAmplitude.from_fock_state(FockStateVector(basis, ev.propagate(psi0, 1.5)))
    assert particle_entangled(v).entangled


def test_non_orthogonal_rank_two_flag():
    a = np.array([1, 0, 0])
    b = np.array([1, 1, 0]) / np.sqrt(2)
    v = TwoParticleAmplitude.from_product(a, b)
    verdict = particle_entangled(v)
    assert verdict.classification is ParticleClass.SYMMETRIZED_PRODUCT
    assert not verdict.orthogonal
    assert csop_check(v).status is CSOPStatus.NONE


@given(st.integers(2, 6), st.integers(0, 2**31 - 1))
def test_takagi_reconstruction(d, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    A = A + A.T
    s, W = takagi(A)
    assert np.all(np.diff(s) <= 1e-15) and np.all(s >= 0)
    assert np.max(np.abs((W * s) @ W.T - A)) < 1e-10 * np.abs(A).max()
    assert np.max(np.abs(W.conj().T @ W - np.eye(d))) < 1e-10


def test_takagi_degenerate_and_rank_deficient(rng):
    U = random_unitary(5, rng)
    A = U @ np.diag([0.6, 0.6, 0.5, 0, 0]) @ U.T
    s, W = takagi(A)
    assert np.allclose(s, [0.6, 0.6, 0.5, 0, 0], atol=1e-12)
    assert np.allclose((W * s) @ W.T, A, atol=1e-12)
    assert np.allclose(W.conj().T @ W, np.eye(5), atol=1e-10)


def test_rank_invariant_under_single_particle_unitaries(rng):
    states = [
        phi_x_amplitude(),
        TwoParticleAmplitude.from_product([1, 0, 0, 0], [0, 1, 0, 0]),
        TwoParticleAmplitude(np.diag([1, 0, 0, 0])),
        TwoParticleAmplitude(np.diag([1, 0.5, 0.2, 0])),
    ]
    ranks = [schmidt_spectrum(v).rank for v in states]
    assert ranks == [4, 2, 1, 3]
    for _ in range(100):
        U = random_unitary(4, rng)
        for v, r in zip(states, ranks):
            assert schmidt_spectrum(v.transformed(U)).rank == r


def test_csop_hom_states(S, plus):
    res = csop_check(S)
    assert res.found and res.expectation == pytest.approx(1, abs=1e-10)
    assert csop_expectation(S, np.outer(RIGHT, RIGHT)) == pytest.approx(1, abs=1e-12)
    res = csop_check(plus)
    assert res.found and res.expectation == pytest.approx(1, abs=1e-10)
    p = (LEFT + 1j * RIGHT) / np.sqrt(2)
    assert csop_expectation(plus, np.outer(p, p.conj())) == pytest.approx(1, abs=1e-12)


def test_csop_absent_for_phi_x():
    res = csop_check(phi_x_amplitude())
    assert res.status is CSOPStatus.NONE
    assert res.best_found < 1 - 1e-3


def test_csop_grid_sweep_phi_x():
    # coarse grid over a real 4-dim unit sphere patch plus random complex directions
    v = phi_x_amplitude()
    rng = np.random.default_rng(0)
    best = 0.0
    for _ in range(2000):
        p = rng.normal(size=4) + 1j * rng.normal(size=4)
        p /= np.linalg.norm(p)
        best = max(best, csop_expectation(v, np.outer(p, p.conj())))
    assert best < 1 - 1e-3
    assert csop_max_search(v.v, restarts=8)[0] == pytest.approx(0.5, abs=1e-6)


def test_cut_validation():
    with pytest.raises(CutError):
        BipartiteCut((), (0, 1))
    with pytest.raises(CutError):
        BipartiteCut((0, 1), (1,))
    with pytest.raises(CutError):
        reduced_density_matrix(FockStateVector.from_occupation((1, 1, 0)), BipartiteCut((0,), (1,)))


def test_reduced_density_examples():
    rho = reduced_density_matrix(FockStateVector.from_occupation((1, 1)), [0])
    assert rho.purity() == pytest.approx(1)
    b = enumerate_basis(2, 2)
    s = FockStateVector.from_dict(b, {(2, 0): 1, (0, 2): 1}).normalized()
    rho = reduced_density_matrix(s, [0])
    assert list(rho.labels) == [(2,), (1,), (0,)]
    assert np.allclose(rho.matrix, np.diag([0.5, 0, 0.5]))
    assert rho.purity() == pytest.approx(0.5)


@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_cut_symmetry_and_bounds(L, N, seed):
    rng = np.random.default_rng(seed)
    s = FockStateVector.random(enumerate_basis(L, N), rng)
    k = int(rng.integers(1, L))
    left = sorted(rng.choice(L, size=k, replace=False).tolist())
    cut = BipartiteCut.from_left(left, L)
    rl = reduced_density_matrix(s, cut)
    rr = reduced_density_matrix(s, cut.swapped())
    assert rl.purity() == pytest.approx(rr.purity(), abs=1e-12)
    assert entropies(rl)[1] == pytest.approx(entropies(rr)[1], abs=1e-12)
    assert 1 / rl.dim - 1e-12 <= rl.purity() <= 1 + 1e-12
    assert np.trace(rl.matrix).real == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("left", [[0, 2], [1, 3], [0, 3], [2, 1]])
def test_fermion_reduced_state_matches_hopping_correlator(left, rng):
    # one-body coherences inside the left block equal <c_i^dag c_j> on the full chain
    b = enumerate_basis(4, 2, "fermion")
    for _ in range(5):
        s = FockStateVector.random(b, rng)
        rho = reduced_density_matrix(s, left)
        labels = list(rho.labels)
        i, j = sorted(left)
        src = labels.index((0, 1))
        dst = labels.index((1, 0))
        expect = np.vdot(s.amplitudes, hopping_matrix(b, i, j) @ s.amplitudes)
        assert rho.matrix[src, dst] == pytest.approx(expect, abs=1e-12)


def test_entropy_examples(rng):
    assert entropies(np.diag([1.0, 0.0])) == pytest.approx((0, 0), abs=1e-15)
    assert entropies(np.diag([0.5, 0.5])) == pytest.approx((np.log(2), np.log(2)))
    for _ in range(20):
        X = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = X @ X.conj().T
        rho /= np.trace(rho)
        svn, s2 = entropies(DensityMatrix(rho))
        assert s2 <= svn + 1e-12


def test_twin_protocol_examples():
    for occ in [(1, 1), (2, 0, 1), (0, 3)]:
        assert twin_parity_purity(FockStateVector.from_occupation(occ)) == pytest.approx(1, abs=1e-12)
    b = enumerate_basis(2, 2)
    s = FockStateVector.from_dict(b, {(2, 0): 1, (0, 2): 1}).normalized()
    assert twin_parity_purity(s, [0]) == pytest.approx(0.5, abs=1e-12)


def test_twin_state_structure():
    s = FockStateVector.from_occupation((1, 0))
    tw = twin_state(s)
    assert tw.basis.modes == 4 and tw.basis.particles == 2
    assert tw.probability((1, 0, 1, 0)) == pytest.approx(1)


def test_twin_protocol_random_states(rng):
    for L, N in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)]:
        basis = enumerate_basis(L, N)
        for _ in range(4):
            s = FockStateVector.random(basis, rng)
            sites = sorted(rng.choice(L, size=int(rng.integers(1, L)), replace=False).tolist())
            pur = reduced_density_matrix(s, sites).purity()
            assert twin_parity_purity(s, sites) == pytest.approx(pur, abs=1e-10)
            assert twin_parity_purity(s, sites, "tunneling") == pytest.approx(pur, abs=1e-10)
            low = twin_parity_purity(s, sites, "tunneling", corrected=False)
            assert low <= pur + 1e-10
            assert low == pytest.approx(phase_twisted_overlap(s, sites), abs=1e-10)
            assert twin_parity_purity(s) == pytest.approx(1, abs=1e-10)


def test_phase_correction_is_global_phase_on_fock_inputs():
    s = FockStateVector.from_occupation((2, 1))
    for sites in ([0], [1], [0, 1]):
        a = twin_parity_purity(s, sites, "tunneling")
        b = twin_parity_purity(s, sites, "tunneling", corrected=False)
        assert a == pytest.approx(b, abs=1e-12)
    tw = twin_state(s)
    corr = hubbard_bs_phase_correction(tw, [0])
    assert np.allclose(corr.probabilities(), tw.probabilities())


def test_hardcore_states_accepted():
    b = enumerate_basis(3, 2, max_occupation=1)
    s = FockStateVector.from_dict(b, {(1, 1, 0): 1, (0, 1, 1): 1j}).normalized()
    assert twin_parity_purity(s, [0]) == pytest.approx(reduced_density_matrix(s, [0]).purity(), abs=1e-12)


def test_ground_state_purity():
    p = HubbardParams(1, 10, 2, 2)
    basis = p.basis()
    gs = FockStateVector(basis, ground_state(build_hamiltonian(p, basis)))
    assert twin_parity_purity(gs, [0]) >= 0.9


def test_quench_trace():
    tr = quench_entropy_trace(1, 0, np.linspace(0, np.pi / 2, 201))
    assert tr.s2[0] == pytest.approx(0, abs=1e-14)
    assert tr.t_max == pytest.approx(np.arctan(np.sqrt(2)) / 2, abs=1e-6)
    assert tr.s2_max == pytest.approx(np.log(3), abs=1e-10)
    assert tr.t_dip == pytest.approx(np.pi / 4, abs=1e-6)
    at = quench_entropy_trace(1, 0, [0, np.pi / 8, np.pi / 4])
    assert at.s2[-1] == pytest.approx(np.log(2), abs=1e-10)


def test_postselection():
    res = postselected_spin_entanglement()
    assert res.probability == pytest.approx(0.5, abs=1e-12)
    assert res.singlet_overlap == pytest.approx(1, abs=1e-12)
    assert schmidt_spectrum(res.conditional).rank == 4
    assert particle_entangled(res.conditional).entangled
    full = csop_check(res.unconditioned)
    assert full.found and full.expectation == pytest.approx(1, abs=1e-10)
