"""Command-line front end.

    idjc run --config cfg.json
    idjc run --scenario purity-mixture --alpha 5 --tau-max 3.1416 \
             --tau-steps 600 --out out.csv

Flags override keys from the config file.  Exit codes: 0 success, 2 invalid
configuration, 3 numeric precondition or self-check failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError, IdjcError
from .scenarios import SCENARIO_NAMES, config_from_mapping, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idjc",
        description="Field dynamics of the intensity-dependent Jaynes-Cummings model",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a named scenario and write its table(s)")
    run.add_argument("--config", type=Path,
                     help="JSON config file (flat document); flags override its keys")
    run.add_argument("--scenario", choices=SCENARIO_NAMES)
    run.add_argument("--alpha", type=float, help="coherent amplitude (real, positive)")
    run.add_argument("--parity-r", dest="parity_r", type=int, choices=(-1, 0, 1),
                     help="superposition parity for the cat scenarios")
    run.add_argument("--lambda", dest="lam", type=float,
                     help="coupling constant; sets the physical time scale only")
    run.add_argument("--tau-max", dest="tau_max", type=float,
                     help="end of the dimensionless time sweep")
    run.add_argument("--tau-steps", dest="tau_steps", type=int,
                     help="number of tau samples from 0 to tau-max inclusive")
    run.add_argument("--tau-values", dest="tau_values", type=_tau_list,
                     help="comma-separated taus for the qfunc-mixture grids")
    run.add_argument("--dim", type=_dim_value,
                     help='Fock truncation: "auto" or an integer')
    run.add_argument("--x-min", dest="x_min", type=float)
    run.add_argument("--x-max", dest="x_max", type=float)
    run.add_argument("--y-min", dest="y_min", type=float)
    run.add_argument("--y-max", dest="y_max", type=float)
    run.add_argument("--nx", type=int)
    run.add_argument("--ny", type=int)
    run.add_argument("--out", dest="output_path", help="output file path")
    run.add_argument("--format", dest="output_format", choices=("csv", "json"))
    run.add_argument("--self-check", action="store_true",
                     help="cross-check numeric output against closed forms before writing")
    run.add_argument("--jobs", type=int, default=1,
                     help="worker threads for grid rows (output is identical for any value)")
    return parser


def _tau_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _dim_value(text: str):
    return text if text == "auto" else int(text)


_OVERRIDE_KEYS = (
    "scenario", "alpha", "parity_r", "lam", "tau_max", "tau_steps", "tau_values",
    "dim", "x_min", "x_max", "y_min", "y_max", "nx", "ny",
    "output_path", "output_format",
)


def _load_config_file(path: Path) -> dict:
    text = path.read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file {path}: not valid JSON ({exc})"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError([f"config file {path}: must be a single flat JSON object"])
    return raw


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = _load_config_file(args.config) if args.config else {}
        for key in _OVERRIDE_KEYS:
            value = getattr(args, key, None)
            if value is not None:
                raw[key] = value
        config = config_from_mapping(raw)
        paths = run_scenario(config, self_check=args.self_check, jobs=args.jobs)
    except ConfigError as exc:
        for message in exc.field_errors:
            print(f"error: {message}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except IdjcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
