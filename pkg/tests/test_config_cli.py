import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats as sps

from fock_interfere import config as cfgmod
from fock_interfere.cli import EXIT_CONFIG, EXIT_DIMENSION, EXIT_OK, format_cell, main
from fock_interfere.config import ConfigError, GridAxis, OutputSpec, SamplingSpec, ScenarioConfig
from fock_interfere.interference import beamsplitter, output_distribution
from fock_interfere.scenarios import SCENARIOS, sample_outcomes

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def write(tmp_path, text, name="s.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


# --- config parsing --------------------------------------------------------------

finite = st.floats(-1e6, 1e6, allow_nan=False)
axes = st.one_of(
    st.lists(finite, min_size=1, max_size=5).map(lambda v: GridAxis(values=tuple(v))),
    st.tuples(finite, finite, st.integers(1, 50)).map(lambda a: GridAxis(start=a[0], stop=a[1], num=a[2])),
)
param_values = st.one_of(finite, st.integers(-100, 100), st.booleans(), st.text("abc-", min_size=1, max_size=5),
                         st.lists(st.integers(0, 4), min_size=1, max_size=4))


@given(
    st.sampled_from(sorted(SCENARIOS)),
    st.sampled_from(["boson", "fermion", "distinguishable"]),
    st.dictionaries(st.sampled_from(["R", "J", "U", "N", "input", "x"]), param_values, max_size=4),
    st.dictionaries(st.sampled_from(["t", "theta", "U", "phi"]), axes, max_size=2),
    st.sampled_from(["csv", "json"]),
    st.one_of(st.none(), st.tuples(st.integers(1, 10**6), st.integers(0, 2**32))),
)
def test_config_round_trip(name, statistics, params, grid, fmt, sampling):
    cfg = ScenarioConfig(name, statistics, params, grid, OutputSpec(fmt, "out"),
                         SamplingSpec(*sampling) if sampling else None)
    again = cfgmod.loads(cfg.dumps())
    assert again == cfg
    assert cfgmod.loads(again.dumps()) == again


def test_shipped_configs_round_trip():
    for path in sorted(CONFIGS.glob("*.toml")):
        cfg = cfgmod.load(path)
        assert cfgmod.loads(cfg.dumps()) == cfg


def test_grid_axis_forms():
    ax = GridAxis.parse("t", {"start": 0, "stop": 1, "num": 5})
    assert np.allclose(ax.array(), [0, 0.25, 0.5, 0.75, 1])
    assert GridAxis.parse("t", [3, 1]).array().tolist() == [3.0, 1.0]
    for bad in ([], {"start": 0, "stop": 1}, {"start": 0, "stop": 1, "num": 0}, "0:1", ["a"]):
        with pytest.raises(ConfigError):
            GridAxis.parse("t", bad)


@pytest.mark.parametrize("text, field", [
    ('scenario = "hom-dip"\nbogus = 1\n', "bogus"),
    ('statistics = "boson"\n', "scenario"),
    ('scenario = "hom-dip"\n[output]\nformat = "xml"\n', "output.format"),
    ('scenario = "hom-dip"\n[sampling]\nshots = 10\n', "sampling.seed"),
    ('scenario = "hom-dip"\n[sampling]\nshots = 0\nseed = 1\n', "sampling.shots"),
])
def test_config_field_errors(text, field):
    with pytest.raises(ConfigError) as err:
        cfgmod.loads(text)
    assert err.value.field == field


def test_syntax_error_reports_line():
    with pytest.raises(ConfigError) as err:
        cfgmod.loads('scenario = "hom-dip"\n[params\nR = 0.5\n')
    assert "line 2" in str(err.value)


# --- cli exit codes ---------------------------------------------------------------

def test_bad_parameter_domain(tmp_path, capsys):
    p = write(tmp_path, 'scenario = "hom-dip"\n[params]\nR = 1.5\n[grid]\ntheta = [0.0]\n')
    assert main(["run", str(p), "--out", str(tmp_path / "o")]) == EXIT_CONFIG
    assert "params.R" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_unknown_scenario_lists_names(tmp_path, capsys):
    p = write(tmp_path, 'scenario = "teleport"\n')
    assert main(["run", str(p), "--out", str(tmp_path)]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert all(name in err for name in SCENARIOS)


def test_unknown_param(tmp_path, capsys):
    p = write(tmp_path, 'scenario = "hom-dip"\n[params]\nRR = 0.5\n')
    assert main(["run", str(p), "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "RR" in capsys.readouterr().err


def test_missing_seed_and_syntax(tmp_path, capsys):
    p = write(tmp_path, 'scenario = "two-mode"\n[sampling]\nshots = 5\n')
    assert main(["run", str(p)]) == EXIT_CONFIG
    assert "sampling.seed" in capsys.readouterr().err
    p = write(tmp_path, 'scenario = "two-mode\n', "bad.toml")
    assert main(["run", str(p)]) == EXIT_CONFIG
    assert "line 1" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["run", str(tmp_path / "nope.toml")]) == EXIT_CONFIG


def test_sampling_rejected_where_unsupported(tmp_path):
    p = write(tmp_path, 'scenario = "double-well"\n[sampling]\nshots = 5\nseed = 1\n')
    assert main(["run", str(p), "--out", str(tmp_path)]) == EXIT_CONFIG


@pytest.mark.parametrize("params", ['input = [20, 20, 20, 20, 20, 20, 20, 20, 20, 20]', 'input = [3, 3, 3]\ncap = 10'])
def test_dimension_cap_exit(tmp_path, params, capsys):
    p = write(tmp_path, f'scenario = "distribution"\nstatistics = "boson"\n[params]\n{params}\nnetwork = "fourier"\n')
    assert main(["run", str(p), "--out", str(tmp_path / "o")]) == EXIT_DIMENSION
    assert "dimension" in capsys.readouterr().err


def test_list_scenarios(capsys):
    assert main(["list-scenarios"]) == EXIT_OK
    out = capsys.readouterr().out
    assert all(name in out for name in SCENARIOS)


def test_bench(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "permanent", "--max-n", "8", "--min-n", "4", "--out", str(out)]) == EXIT_OK
    rows = read_csv(out)
    assert [int(r["n"]) for r in rows] == [4, 6, 8]
    assert all(float(r["seconds"]) >= 0 for r in rows)
    assert main(["bench", "permanent", "--max-n", "2", "--min-n", "4"]) == EXIT_CONFIG


def test_format_cell():
    assert format_cell(0.1) == "0.1"
    assert float(format_cell(1 / 3)) == 1 / 3
    assert format_cell((2, 0)) == "(2,0)"
    assert format_cell(True) == "true"


# --- scenario outputs ---------------------------------------------------------------

def test_hom_dip_table(tmp_path):
    assert main(["run", str(CONFIGS / "hom_dip.toml"), "--out", str(tmp_path)]) == EXIT_OK
    rows = read_csv(tmp_path / "hom-dip.csv")
    assert list(rows[0]) == ["theta", "P20", "P11", "P02"]
    assert len(rows) == 50
    assert float(rows[0]["theta"]) == 0.0
    assert abs(float(rows[0]["P11"])) < 1e-15
    assert float(rows[-1]["theta"]) == pytest.approx(math.pi / 2)
    assert float(rows[-1]["P11"]) == pytest.approx(0.5)


def test_double_well_minima(tmp_path):
    assert main(["run", str(CONFIGS / "double_well.toml"), "--out", str(tmp_path)]) == EXIT_OK
    rows = read_csv(tmp_path / "double-well.csv")
    for r in rows:
        assert float(r["P11"]) == pytest.approx(float(r["P11_closed"]), abs=1e-10)
    minima = json.loads((tmp_path / "double-well_summary.json").read_text())["minima"]
    for U, m in minima.items():
        assert m["bound"] == pytest.approx(float(U) ** 2 / (16 + float(U) ** 2), abs=1e-12)
        # the sampled grid can only overshoot the true minimum
        assert m["grid_min"] >= m["bound"] - 1e-12
        assert m["grid_min"] - m["bound"] < 5e-3


def test_twin_purity_regime(tmp_path):
    assert main(["run", str(CONFIGS / "twin_purity.toml"), "--out", str(tmp_path)]) == EXIT_OK
    rows = read_csv(tmp_path / "twin-purity.csv")
    U = np.array([float(r["U"]) for r in rows])
    pur = np.array([float(r["purity_parity"]) for r in rows])
    assert np.allclose(pur, [float(r["purity_trace"]) for r in rows], atol=1e-10)
    assert np.all(np.diff(pur) > 0)
    # most of the change from the free to the localized value happens for 1 <= U/J <= 10
    at = dict(zip(U, pur))
    assert at[10.0] - at[1.0] > 0.5 * (pur[-1] - pur[0])
    assert pur[0] < 0.4 and pur[-1] > 0.99


def test_schmidt_json(tmp_path):
    assert main(["run", str(CONFIGS / "schmidt.toml"), "--out", str(tmp_path)]) == EXIT_OK
    doc = json.loads((tmp_path / "schmidt.json").read_text())
    summary = doc["summary"]
    assert summary["S"]["rank"] == 2 and summary["phi_x"]["rank"] == 4
    basis = summary["phi_x"]["basis"]
    assert all(len(pair) == 2 for row in basis for pair in row)


def test_format_override(tmp_path):
    assert main(["run", str(CONFIGS / "hom_dip.toml"), "--out", str(tmp_path), "--format", "json"]) == EXIT_OK
    doc = json.loads((tmp_path / "hom-dip.json").read_text())
    assert doc["tables"]["main"]["columns"] == ["theta", "P20", "P11", "P02"]


def test_determinism_byte_identical(tmp_path):
    for name in ["suppression.toml", "hom_counts.toml", "schmidt.toml", "lmg.toml"]:
        a, b = tmp_path / f"a_{name}", tmp_path / f"b_{name}"
        assert main(["run", str(CONFIGS / name), "--out", str(a)]) == EXIT_OK
        assert main(["run", str(CONFIGS / name), "--out", str(b)]) == EXIT_OK
        fa = sorted(p.name for p in a.iterdir())
        assert fa == sorted(p.name for p in b.iterdir())
        for f in fa:
            assert (a / f).read_bytes() == (b / f).read_bytes()


def test_seed_override_changes_counts(tmp_path):
    main(["run", str(CONFIGS / "suppression.toml"), "--out", str(tmp_path / "a")])
    main(["run", str(CONFIGS / "suppression.toml"), "--out", str(tmp_path / "b"), "--seed", "12"])
    assert (tmp_path / "a" / "two-mode_counts.csv").read_bytes() != (tmp_path / "b" / "two-mode_counts.csv").read_bytes()


# --- sampling ------------------------------------------------------------------------

def test_single_particle_golden(tmp_path):
    p = write(tmp_path, (
        'scenario = "distribution"\n[params]\ninput = [1, 0]\nR = 0.5\n'
        '[sampling]\nshots = 10000\nseed = 20240\n'
    ))
    assert main(["run", str(p), "--out", str(tmp_path / "o")]) == EXIT_OK
    got = (tmp_path / "o" / "distribution_counts.csv").read_text()
    assert got == (GOLDEN / "single_particle_counts.csv").read_text()


def test_hom_never_coincident():
    dist = output_distribution((1, 1), beamsplitter(0.5), "boson")
    counts = sample_outcomes(dist, 10_000, 3)
    assert counts.get((1, 1), 0) == 0
    assert sum(counts.values()) == 10_000


def test_distinguishable_hom_binomial():
    dist = output_distribution((1, 1), beamsplitter(0.5), "distinguishable")
    shots = 100_000
    n11 = sample_outcomes(dist, shots, 2024)[(1, 1)]
    sigma = math.sqrt(shots * 0.25)
    assert abs(n11 - shots / 2) < 3 * sigma


def test_sampling_reproducible_and_chi_square():
    w = np.exp(2j * np.pi / 3)
    tritter = np.array([[1, 1, 1], [1, w, w * w], [1, w * w, w]]) / np.sqrt(3)
    dist = output_distribution((2, 1, 1), tritter, "boson")
    a = sample_outcomes(dist, 50_000, 9)
    assert a == sample_outcomes(dist, 50_000, 9)
    keys = [k for k, q in dist.items() if q > 1e-12]
    obs = np.array([a.get(k, 0) for k in keys])
    exp = np.array([dist[k] for k in keys]) * 50_000
    exp *= obs.sum() / exp.sum()
    assert sps.chisquare(obs, exp).pvalue > 1e-3


def test_sampling_requires_positive_shots():
    dist = output_distribution((1, 0), beamsplitter(0.5), "boson")
    with pytest.raises(ValueError):
        sample_outcomes(dist, 0, 1)
