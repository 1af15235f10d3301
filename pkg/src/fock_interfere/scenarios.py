"""Named experiments runnable from a scenario file.

Each scenario declares its parameters (with defaults and domains), its
grid axes and the statistics it accepts. ``validate`` resolves a
:class:`~fock_interfere.config.ScenarioConfig` against that declaration
before anything is computed; ``run_scenario`` then returns plain tables and
a summary that the command-line layer serialises.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .config import ConfigError, ScenarioConfig
from .distinguishability import partial_overlap_probs
from .entanglement import (
    csop_check,
    entropies,
    particle_entangled,
    phi_x_amplitude,
    postselected_spin_entanglement,
    quench_entropy_trace,
    reduced_density_matrix,
    schmidt_spectrum,
    twin_parity_purity,
    TwoParticleAmplitude,
)
from .fock import DEFAULT_DIMENSION_CAP, FockStateVector, Statistics, enumerate_basis
from .hubbard import (
    ConditioningWarning,
    Evolver,
    HubbardParams,
    ValidityWarning,
    build_hamiltonian,
    double_occupancy_profile,
    double_well_p11,
    double_well_p11_min,
    doublon_walk,
    ground_state,
    lmg_distribution,
    site_densities,
)
from .interference import (
    OutputDistribution,
    beamsplitter,
    evolve_state,
    fourier_unitary,
    mach_zehnder_probs,
    mach_zehnder_unitary,
    output_distribution,
    two_mode_nn_distribution,
)

ALL_STATS = ("boson", "fermion", "distinguishable")


@dataclass(frozen=True)
class Param:
    name: str
    default: Any
    kind: str  # float, int, bool, str, floats, ints, strs
    lo: float | None = None
    hi: float | None = None
    choices: tuple | None = None
    strict_lo: bool = False


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]


@dataclass
class ScenarioResult:
    tables: dict[str, Table]
    summary: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    runner: Callable[[dict, dict, Statistics, Any], ScenarioResult]
    params: tuple[Param, ...] = ()
    axes: dict[str, tuple[Callable[[dict], np.ndarray], float | None, float | None]] = field(default_factory=dict)
    statistics: tuple[str, ...] = ("boson",)
    sampling: bool = False


def _check_scalar(where: str, p: Param, v):
    if p.kind == "bool":
        if not isinstance(v, bool):
            raise ConfigError(where, f"expected true or false, got {v!r}")
        return v
    if p.kind == "str":
        if not isinstance(v, str):
            raise ConfigError(where, f"expected a string, got {v!r}")
        if p.choices and v not in p.choices:
            raise ConfigError(where, f"must be one of {list(p.choices)}, got {v!r}")
        return v
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(where, f"expected a number, got {v!r}")
    if p.kind == "int":
        if not isinstance(v, int):
            raise ConfigError(where, f"expected an integer, got {v!r}")
    else:
        v = float(v)
    if not np.isfinite(v):
        raise ConfigError(where, "must be finite")
    if p.lo is not None and (v < p.lo or (p.strict_lo and v == p.lo)):
        op = ">" if p.strict_lo else ">="
        raise ConfigError(where, f"must be {op} {p.lo}, got {v}")
    if p.hi is not None and v > p.hi:
        raise ConfigError(where, f"must be <= {p.hi}, got {v}")
    return v


def _check_param(p: Param, v):
    where = f"params.{p.name}"
    if p.kind in ("floats", "ints", "strs"):
        if not isinstance(v, list) or not v:
            raise ConfigError(where, "expected a non-empty list")
        inner = Param(p.name, None, p.kind[:-1], p.lo, p.hi, p.choices, p.strict_lo)
        return [_check_scalar(f"{where}[{i}]", inner, x) for i, x in enumerate(v)]
    return _check_scalar(where, p, v)


def validate(scenario: "Scenario", config: ScenarioConfig) -> tuple[dict, dict, Statistics]:
    """Resolve parameters and grids; raises :class:`ConfigError` on any domain violation."""
    if config.statistics not in scenario.statistics:
        raise ConfigError(
            "statistics", f"scenario {scenario.name!r} accepts {list(scenario.statistics)}, got {config.statistics!r}"
        )
    known = {p.name: p for p in scenario.params}
    for name in config.params:
        if name not in known:
            raise ConfigError(f"params.{name}", f"unknown parameter; expected one of {sorted(known)}")
    params = {}
    for p in scenario.params:
        if p.name in config.params:
            params[p.name] = _check_param(p, config.params[p.name])
        else:
            params[p.name] = p.default
    for name in config.grid:
        if name not in scenario.axes:
            raise ConfigError(f"grid.{name}", f"unknown axis; expected one of {sorted(scenario.axes)}")
    grids = {}
    for name, (default, lo, hi) in scenario.axes.items():
        arr = config.grid[name].array() if name in config.grid else np.asarray(default(params), dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ConfigError(f"grid.{name}", "values must be finite")
        if lo is not None and np.any(arr < lo - 1e-15):
            raise ConfigError(f"grid.{name}", f"values must be >= {lo}")
        if hi is not None and np.any(arr > hi + 1e-15):
            raise ConfigError(f"grid.{name}", f"values must be <= {hi}")
        grids[name] = arr
    if config.sampling is not None and not scenario.sampling:
        raise ConfigError("sampling", f"scenario {scenario.name!r} does not support sampling")
    _cross_checks(scenario.name, params)
    return params, grids, Statistics.parse(config.statistics)


def _cross_checks(name: str, p: dict):
    if "sites" in p and "L" in p:
        bad = [s for s in p["sites"] if s >= p["L"]]
        if bad:
            raise ConfigError("params.sites", f"sites {bad} lie outside a chain of length {p['L']}")
    if name == "distribution" and p["network"] == "beamsplitter" and len(p["input"]) != 2:
        raise ConfigError("params.input", "a beamsplitter network needs exactly two modes")
    if name == "doublon" and "origin" in p and p["origin"] >= p["L"]:
        raise ConfigError("params.origin", f"must be < L = {p['L']}")
    if name == "twin-purity" and p["N"] > 6:
        raise ConfigError("params.N", "twin-copy space grows too fast beyond N = 6")


# --- sampling -----------------------------------------------------------------------


def sample_outcomes(distribution: OutputDistribution, shots: int, seed: int) -> dict[tuple[int, ...], int]:
    """Finite-shot detection counts drawn from ``distribution`` (multinomial)."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.clip(distribution.probabilities, 0.0, None)
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(int(shots), p)
    return {pat: int(c) for pat, c in zip(distribution.patterns, counts)}


def _counts_table(counts: dict) -> Table:
    return Table(["occupation", "count"], [(pat, c) for pat, c in counts.items()])


# --- runners ------------------------------------------------------------------------


def _run_hom_dip(p, g, stats, sampling):
    rows = [(th, *partial_overlap_probs(p["R"], th, stats)) for th in g["theta"]]
    summary = {"P11_first": rows[0][2], "theta_first": rows[0][0]}
    return ScenarioResult({"main": Table(["theta", "P20", "P11", "P02"], rows)}, summary)


def _run_mach_zehnder(p, g, stats, sampling):
    rows = []
    for phi in g["phi"]:
        p10, p01 = mach_zehnder_probs(p["R"], phi)
        dist = output_distribution((1, 0), mach_zehnder_unitary(p["R"], phi), stats)
        rows.append((phi, p10, p01, dist[(1, 0)], dist[(0, 1)]))
    return ScenarioResult({"main": Table(["phi", "P10", "P01", "P10_simulated", "P01_simulated"], rows)})


def _dist_result(dist: OutputDistribution, sampling) -> ScenarioResult:
    tables = {"main": Table(["occupation", "probability"], list(dist.items()))}
    summary = {"total": dist.total()}
    if sampling is not None:
        tables["counts"] = _counts_table(sample_outcomes(dist, sampling.shots, sampling.seed))
        summary.update(shots=sampling.shots, seed=sampling.seed)
    return ScenarioResult(tables, summary)


def _run_two_mode(p, g, stats, sampling):
    N = p["N"]
    dist = two_mode_nn_distribution(N, p["R"], stats, p["varphi"])
    res = _dist_result(dist, sampling)
    res.summary["odd_weight"] = float(sum(q for (k, _), q in dist.items() if k % 2))
    return res


def _run_distribution(p, g, stats, sampling):
    occ = tuple(p["input"])
    enumerate_basis(len(occ), sum(occ), stats, cap=p["cap"])  # dimension check first
    if p["network"] == "beamsplitter":
        U = beamsplitter(p["R"], p["varphi"])
    elif p["network"] == "fourier":
        U = fourier_unitary(len(occ))
    else:
        U = np.eye(len(occ))
    return _dist_result(output_distribution(occ, U, stats), sampling)


def _run_double_well(p, g, stats, sampling):
    J = p["J"]
    ts = g["t"]
    basis = enumerate_basis(2, 2)
    psi0 = FockStateVector.from_occupation((1, 1)).amplitudes
    rows = []
    minima = {}
    for U in p["U_values"]:
        ev = Evolver(build_hamiltonian(HubbardParams(J, U, 2, 2), basis))
        p11 = np.abs(ev.propagate_many(psi0, ts)[:, basis.index_of((1, 1))]) ** 2
        closed = double_well_p11(J, U, ts)
        rows.extend((U, t, a, b) for t, a, b in zip(ts, p11, closed))
        minima[repr(U)] = {"grid_min": float(p11.min()), "bound": double_well_p11_min(J, U)}
    return ScenarioResult({"main": Table(["U", "t", "P11", "P11_closed"], rows)}, {"minima": minima})


def _run_lmg(p, g, stats, sampling):
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        for t in g["t"]:
            d = lmg_distribution(p["N"], p["J"], p["U"], t)
            mom = d.from_moments if d.from_moments is not None else [None] * (p["N"] + 1)
            rows.extend((t, n1, q, m) for n1, q, m in zip(d.n1.tolist(), d.direct, mom))
    return ScenarioResult({"main": Table(["t", "n1", "probability", "probability_moments"], rows)})


def _run_lattice_walk(p, g, stats, sampling):
    L = p["L"]
    occ = [0] * L
    for s in p["sites"]:
        occ[s] += 1
    if stats is Statistics.FERMION and max(occ) > 1:
        raise ConfigError("params.sites", "fermions need distinct sites")
    if p["hardcore"] and max(occ) > 1:
        raise ConfigError("params.sites", "hard-core bosons need distinct sites")
    hp = HubbardParams(p["J"], p["U"], L, sum(occ), boundary=p["boundary"], statistics=stats, hardcore=p["hardcore"])
    basis = hp.basis()
    ev = Evolver(build_hamiltonian(hp, basis))
    psi0 = FockStateVector.from_occupation(occ, basis=basis).amplitudes
    rows = []
    for t, amps in zip(g["t"], ev.propagate_many(psi0, g["t"])):
        dens = site_densities(FockStateVector(basis, amps))
        rows.extend((t, j, d) for j, d in enumerate(dens))
    return ScenarioResult({"main": Table(["t", "site", "density"], rows)})


def _run_doublon(p, g, stats, sampling):
    J, U, L = p["J"], p["U"], p["L"]
    origin = p["origin"] if p["origin"] >= 0 else L // 2
    hp = HubbardParams(J, U, L, 2)
    basis = hp.basis()
    ev = Evolver(build_hamiltonian(hp, basis))
    occ = [0] * L
    occ[origin] = 2
    psi0 = FockStateVector.from_occupation(occ).amplitudes
    rows = []
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        for t, amps in zip(g["t"], ev.propagate_many(psi0, g["t"])):
            exact = double_occupancy_profile(FockStateVector(basis, amps))
            eff = double_occupancy_profile(doublon_walk(J, U, t, L, origin))
            worst = max(worst, float(np.abs(exact - eff).max()))
            rows.extend((t, j, e, x) for j, (e, x) in enumerate(zip(eff, exact)))
    return ScenarioResult({"main": Table(["t", "site", "effective", "exact"], rows)}, {"max_deviation": worst})


def _named_amplitudes(p) -> dict[str, TwoParticleAmplitude]:
    S = FockStateVector.from_occupation((1, 1))
    out = {
        "S": TwoParticleAmplitude.from_fock_state(S),
        "plus": TwoParticleAmplitude.from_fock_state(evolve_state(S, beamsplitter(0.5))),
        "phi_x": phi_x_amplitude(),
    }
    L = p["L"]
    occ = [0] * L
    occ[L // 2] = 2
    out["doublon"] = TwoParticleAmplitude.from_fock_state(FockStateVector.from_occupation(occ))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        walked = doublon_walk(1.0, p["U"], p["x"] * p["U"] / 4, L)
    out["walked_doublon"] = TwoParticleAmplitude.from_fock_state(walked)
    out["postselected"] = postselected_spin_entanglement().conditional
    return out


def _run_schmidt(p, g, stats, sampling):
    amps = _named_amplitudes(p)
    rows = []
    summary = {}
    for name in p["states"]:
        spec = schmidt_spectrum(amps[name])
        verdict = particle_entangled(amps[name])
        csop = csop_check(amps[name])
        rows.extend((name, k, c) for k, c in enumerate(spec.coefficients))
        summary[name] = {
            "rank": spec.rank,
            "classification": verdict.classification.value,
            "orthogonal": verdict.orthogonal,
            "csop": csop.status.value,
            "csop_expectation": csop.expectation,
            "csop_best_found": csop.best_found,
            "basis": spec.basis,
        }
    return ScenarioResult({"main": Table(["state", "k", "coefficient"], rows)}, summary)


def _run_entropy_quench(p, g, stats, sampling):
    tr = quench_entropy_trace(p["J"], p["U"], g["t"])
    summary = {"t_max": tr.t_max, "S2_max": tr.s2_max, "t_dip": tr.t_dip, "S2_dip": tr.s2_dip}
    return ScenarioResult({"main": Table(["t", "S2"], list(zip(tr.times, tr.s2)))}, summary)


def _run_twin_purity(p, g, stats, sampling):
    L, N = p["L"], p["N"]
    rows = []
    for U in g["U"]:
        hp = HubbardParams(p["J"], U, L, N, boundary=p["boundary"])
        basis = hp.basis()
        gs = FockStateVector(basis, ground_state(build_hamiltonian(hp, basis)))
        rho = reduced_density_matrix(gs, p["sites"])
        rows.append((U, twin_parity_purity(gs, p["sites"]), rho.purity(), entropies(rho)[1]))
    return ScenarioResult({"main": Table(["U", "purity_parity", "purity_trace", "S2"], rows)})


# --- registry -----------------------------------------------------------------------

_R = Param("R", 0.5, "float", 0.0, 1.0)
_VARPHI = Param("varphi", 0.0, "float")
_J = Param("J", 1.0, "float", 0.0, None, strict_lo=True)
_T_AXIS = (0.0, None)

SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in [
        Scenario(
            "hom-dip",
            "two-particle coincidence dip versus overlap angle theta",
            _run_hom_dip,
            (_R,),
            {"theta": (lambda p: np.linspace(0, np.pi / 2, 50), 0.0, np.pi / 2)},
            ALL_STATS,
        ),
        Scenario(
            "mach-zehnder",
            "single-particle fringes of a two-splitter interferometer",
            _run_mach_zehnder,
            (_R,),
            {"phi": (lambda p: np.linspace(0, 2 * np.pi, 65), None, None)},
            ALL_STATS,
        ),
        Scenario(
            "two-mode",
            "(N, N) input on a splitter; shows the odd-outcome suppression",
            _run_two_mode,
            (Param("N", 4, "int", 1, 12), _R, _VARPHI),
            {},
            ALL_STATS,
            sampling=True,
        ),
        Scenario(
            "distribution",
            "full output table of a Fock input on a splitter, Fourier or identity network",
            _run_distribution,
            (
                Param("input", [1, 1], "ints", 0, None),
                Param("network", "beamsplitter", "str", choices=("beamsplitter", "fourier", "identity")),
                _R,
                _VARPHI,
                Param("cap", DEFAULT_DIMENSION_CAP, "int", 1, None),
            ),
            {},
            ALL_STATS,
            sampling=True,
        ),
        Scenario(
            "double-well",
            "P(1,1) time series of two bosons in a double well for several U",
            _run_double_well,
            (_J, Param("U_values", [0.0, 1.0, 4.0, 16.0], "floats", 0.0, None)),
            {"t": (lambda p: np.linspace(0, 10 / p["J"], 201), *_T_AXIS)},
        ),
        Scenario(
            "lmg-sweep",
            "occupation distribution of N bosons in a double well (collective-spin model)",
            _run_lmg,
            (Param("N", 22, "int", 1, 40), _J, Param("U", 0.0, "float", 0.0, None)),
            {"t": (lambda p: np.array([np.pi / (4 * p["J"])]), *_T_AXIS)},
        ),
        Scenario(
            "lattice-walk",
            "site densities of particles hopping on a 1D chain",
            _run_lattice_walk,
            (
                Param("L", 21, "int", 2, 200),
                _J,
                Param("U", 0.0, "float", 0.0, None),
                Param("sites", [10], "ints", 0, None),
                Param("boundary", "open", "str", choices=("open", "periodic")),
                Param("hardcore", False, "bool"),
            ),
            {"t": (lambda p: np.linspace(0, 3, 31), *_T_AXIS)},
            ("boson", "fermion"),
        ),
        Scenario(
            "doublon",
            "bound-pair walk: effective model against exact evolution",
            _run_doublon,
            (_J, Param("U", 20.0, "float", 0.0, None, strict_lo=True), Param("L", 7, "int", 2, 12), Param("origin", -1, "int", -1, None)),
            {"t": (lambda p: np.linspace(0, p["U"] / (2 * p["J"] ** 2), 41), *_T_AXIS)},
        ),
        Scenario(
            "schmidt",
            "Schmidt spectra and projector test of reference two-boson states",
            _run_schmidt,
            (
                Param(
                    "states",
                    ["S", "plus", "phi_x", "doublon", "walked_doublon", "postselected"],
                    "strs",
                    choices=("S", "plus", "phi_x", "doublon", "walked_doublon", "postselected"),
                ),
                Param("L", 7, "int", 3, 15),
                Param("U", 20.0, "float", 0.0, None, strict_lo=True),
                Param("x", 1.5, "float", 0.0, None),
            ),
        ),
        Scenario(
            "entropy-quench",
            "half-system Renyi-2 entropy after a quench from |1,1>",
            _run_entropy_quench,
            (_J, Param("U", 0.0, "float", 0.0, None)),
            {"t": (lambda p: np.linspace(0, np.pi / (2 * p["J"]), 201), *_T_AXIS)},
        ),
        Scenario(
            "twin-purity",
            "subsystem purity of Hubbard ground states from the twin-copy parity",
            _run_twin_purity,
            (
                _J,
                Param("L", 2, "int", 2, 4),
                Param("N", 2, "int", 1, 6),
                Param("sites", [0], "ints", 0, None),
                Param("boundary", "open", "str", choices=("open", "periodic")),
            ),
            {"U": (lambda p: np.array([0.0, 0.5, 1.0, 2.0, 4.0, 10.0, 20.0, 50.0]), 0.0, None)},
        ),
    ]
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ConfigError("scenario", f"unknown scenario {name!r}; valid: {', '.join(SCENARIOS)}") from None


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    scenario = get_scenario(config.scenario)
    params, grids, stats = validate(scenario, config)
    return scenario.runner(params, grids, stats, config.sampling)
