"""``fock-interfere`` command line.

Exit codes: 0 success, 2 invalid scenario file or parameters, 3 a Fock
basis would exceed the dimension cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .config import ConfigError, OutputSpec, SamplingSpec, ScenarioConfig
from .fock import DimensionError
from .permanent import benchmark_permanent
from .scenarios import SCENARIOS, ScenarioResult, Table, run_scenario, sample_outcomes

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIMENSION = 3

__all__ = ["main", "run", "sample_outcomes", "format_cell", "to_jsonable", "write_result"]


def format_cell(value) -> str:
    """CSV cell text; floats use the shortest round-trip representation."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return f"{float(value.real)!r}{float(value.imag):+}j"
    if isinstance(value, tuple):
        return "(" + ",".join(format_cell(v) for v in value) + ")"
    return str(value)


def to_jsonable(value):
    """Plain JSON types; complex numbers become ``[re, im]`` pairs."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def _table_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def _dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_result(config: ScenarioConfig, result: ScenarioResult, out_dir: Path, fmt: str) -> list[Path]:
    """Write ``result`` below ``out_dir``; returns the files written."""
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = config.scenario
    written = []
    if fmt == "csv":
        for name, table in result.tables.items():
            path = out_dir / (f"{stem}.csv" if name == "main" else f"{stem}_{name}.csv")
            path.write_text(_table_csv(table), encoding="utf-8")
            written.append(path)
        if result.summary:
            path = out_dir / f"{stem}_summary.json"
            path.write_text(_dumps(result.summary), encoding="utf-8")
            written.append(path)
    else:
        doc = {
            "scenario": stem,
            "config": config.to_dict(),
            "tables": {
                name: {"columns": t.columns, "rows": [[_json_cell(v) for v in r] for r in t.rows]}
                for name, t in result.tables.items()
            },
            "summary": result.summary,
        }
        path = out_dir / f"{stem}.json"
        path.write_text(_dumps(doc), encoding="utf-8")
        written.append(path)
    return written


def _json_cell(v):
    return list(v) if isinstance(v, tuple) else v


def run(config: ScenarioConfig, out_dir: str | Path | None = None, fmt: str | None = None, seed: int | None = None) -> list[Path]:
    """Validate and execute ``config``; command-line overrides win over the file."""
    if fmt is not None:
        config = replace(config, output=OutputSpec(fmt, config.output.dir))
    if seed is not None and config.sampling is not None:
        config = replace(config, sampling=SamplingSpec(config.sampling.shots, seed))
    result = run_scenario(config)
    target = Path(out_dir) if out_dir is not None else Path(config.output.dir)
    return write_result(config, result, target, config.output.format)


def _cmd_run(args) -> int:
    try:
        config = cfgmod.load(args.config)
        files = run(config, args.out, args.format, args.seed)
    except ConfigError as exc:
        print(f"config error in {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DimensionError as exc:
        print(f"dimension cap exceeded: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except ValueError as exc:
        print(f"invalid parameters in {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for f in files:
        print(f)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.max_n < args.min_n:
        print("--max-n must be >= --min-n", file=sys.stderr)
        return EXIT_CONFIG
    rows = benchmark_permanent(args.max_n, args.min_n, args.step, args.repeats, args.seed)
    table = Table(["n", "seconds"], rows)
    text = _table_csv(table)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
    print(text, end="")
    return EXIT_OK


def _cmd_list(args) -> int:
    width = max(len(n) for n in SCENARIOS)
    for name, sc in SCENARIOS.items():
        print(f"{name:<{width}}  {sc.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fock-interfere", description="Few-particle interference and Hubbard dynamics scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a scenario file")
    p.add_argument("config", help="TOML scenario file")
    p.add_argument("--out", help="output directory (overrides output.dir)")
    p.add_argument("--format", choices=cfgmod.OUTPUT_FORMATS, help="overrides output.format")
    p.add_argument("--seed", type=int, help="overrides sampling.seed")
    p.set_defaults(func=_cmd_run)

    b = sub.add_parser("bench", help="timing benchmarks")
    bsub = b.add_subparsers(dest="target", required=True)
    bp = bsub.add_parser("permanent", help="Ryser permanent on random complex matrices")
    bp.add_argument("--max-n", type=int, default=24)
    bp.add_argument("--min-n", type=int, default=4)
    bp.add_argument("--step", type=int, default=2)
    bp.add_argument("--repeats", type=int, default=1)
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--out", help="also write the report to this CSV file")
    bp.set_defaults(func=_cmd_bench)

    ls = sub.add_parser("list-scenarios", help="show the available scenarios")
    ls.set_defaults(func=_cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
