"""Declarative scenario files.

A scenario file is TOML::

    scenario = "hom-dip"
    statistics = "boson"

    [params]
    R = 0.5

    [grid]
    theta = { start = 0.0, stop = 1.5707963267948966, num = 50 }

    [output]
    format = "csv"
    dir = "results"

    [sampling]          # optional
    shots = 10000
    seed = 7

Grid axes are either explicit lists or ``{start, stop, num}`` tables
(inclusive endpoints, like ``numpy.linspace``).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

OUTPUT_FORMATS = ("csv", "json")
TOP_LEVEL_KEYS = {"scenario", "statistics", "params", "grid", "output", "sampling"}


class ConfigError(ValueError):
    """Invalid scenario file; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class GridAxis:
    values: tuple[float, ...] = ()
    start: float | None = None
    stop: float | None = None
    num: int | None = None

    @property
    def is_range(self) -> bool:
        return self.num is not None

    def array(self) -> np.ndarray:
        if self.is_range:
            return np.linspace(self.start, self.stop, self.num)
        return np.asarray(self.values, dtype=float)

    def to_toml(self):
        if self.is_range:
            return {"start": self.start, "stop": self.stop, "num": self.num}
        return list(self.values)

    @classmethod
    def parse(cls, name: str, raw) -> "GridAxis":
        where = f"grid.{name}"
        if isinstance(raw, list):
            if not raw:
                raise ConfigError(where, "list of values is empty")
            try:
                return cls(values=tuple(_number(where, v) for v in raw))
            except TypeError:
                raise ConfigError(where, "values must be numbers") from None
        if isinstance(raw, dict):
            extra = set(raw) - {"start", "stop", "num"}
            if extra:
                raise ConfigError(where, f"unknown keys {sorted(extra)}")
            missing = {"start", "stop", "num"} - set(raw)
            if missing:
                raise ConfigError(where, f"missing keys {sorted(missing)}")
            num = raw["num"]
            if isinstance(num, bool) or not isinstance(num, int) or num < 1:
                raise ConfigError(f"{where}.num", "must be a positive integer")
            return cls(start=_number(f"{where}.start", raw["start"]), stop=_number(f"{where}.stop", raw["stop"]), num=num)
        raise ConfigError(where, "expected a list or a {start, stop, num} table")


def _number(where: str, v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(where, f"expected a number, got {v!r}")
    return float(v)


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    dir: str = "results"

    def to_toml(self):
        return {"format": self.format, "dir": self.dir}


@dataclass(frozen=True)
class SamplingSpec:
    shots: int
    seed: int

    def to_toml(self):
        return {"shots": self.shots, "seed": self.seed}


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    statistics: str = "boson"
    params: dict[str, Any] = field(default_factory=dict)
    grid: dict[str, GridAxis] = field(default_factory=dict)
    output: OutputSpec = OutputSpec()
    sampling: SamplingSpec | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"scenario": self.scenario, "statistics": self.statistics}
        if self.params:
            out["params"] = dict(self.params)
        if self.grid:
            out["grid"] = {k: g.to_toml() for k, g in self.grid.items()}
        out["output"] = self.output.to_toml()
        if self.sampling is not None:
            out["sampling"] = self.sampling.to_toml()
        return out

    def dumps(self) -> str:
        return tomli_w.dumps(self.to_dict())

    def axis(self, name: str, default=None) -> np.ndarray:
        if name in self.grid:
            return self.grid[name].array()
        if default is None:
            raise ConfigError(f"grid.{name}", "required axis is missing")
        return np.asarray(default, dtype=float)


def from_dict(raw: dict) -> ScenarioConfig:
    extra = set(raw) - TOP_LEVEL_KEYS
    if extra:
        raise ConfigError(sorted(extra)[0], f"unknown top-level key; expected one of {sorted(TOP_LEVEL_KEYS)}")
    if "scenario" not in raw:
        raise ConfigError("scenario", "missing")
    scenario = raw["scenario"]
    if not isinstance(scenario, str):
        raise ConfigError("scenario", "must be a string")
    statistics = raw.get("statistics", "boson")
    if not isinstance(statistics, str):
        raise ConfigError("statistics", "must be a string")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params", "must be a table")
    grid_raw = raw.get("grid", {})
    if not isinstance(grid_raw, dict):
        raise ConfigError("grid", "must be a table")
    grid = {name: GridAxis.parse(name, v) for name, v in grid_raw.items()}

    out_raw = raw.get("output", {})
    if not isinstance(out_raw, dict):
        raise ConfigError("output", "must be a table")
    extra = set(out_raw) - {"format", "dir"}
    if extra:
        raise ConfigError(f"output.{sorted(extra)[0]}", "unknown key")
    fmt = out_raw.get("format", "csv")
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError("output.format", f"must be one of {OUTPUT_FORMATS}, got {fmt!r}")
    out_dir = out_raw.get("dir", "results")
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("output.dir", "must be a non-empty string")

    sampling = None
    if "sampling" in raw:
        s = raw["sampling"]
        if not isinstance(s, dict):
            raise ConfigError("sampling", "must be a table")
        extra = set(s) - {"shots", "seed"}
        if extra:
            raise ConfigError(f"sampling.{sorted(extra)[0]}", "unknown key")
        if "seed" not in s:
            raise ConfigError("sampling.seed", "a seed is mandatory when sampling is enabled")
        shots = s.get("shots")
        if isinstance(shots, bool) or not isinstance(shots, int) or shots < 1:
            raise ConfigError("sampling.shots", "must be an integer >= 1")
        seed = s["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ConfigError("sampling.seed", "must be a non-negative integer")
        sampling = SamplingSpec(shots, seed)

    return ScenarioConfig(
        scenario=scenario,
        statistics=statistics,
        params=dict(params),
        grid=grid,
        output=OutputSpec(fmt, out_dir),
        sampling=sampling,
    )


def loads(text: str) -> ScenarioConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        # the decoder message carries line and column
        raise ConfigError("", f"TOML syntax error: {exc}") from None
    return from_dict(raw)


def load(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def dump(config: ScenarioConfig, path: str | Path):
    Path(path).write_text(config.dumps(), encoding="utf-8")
