"""Command-line entry points: run, validate, and sweep."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import config_from_overrides, load_config, parse_config
from .errors import ConfigError
from .runner import run_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsklab",
        description="Numerical laboratory for 1-D capillary compressible flow: "
                    "wave ansatz construction, evolution, and stability diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one configured scenario")
    p_run.add_argument("--config", required=True, help="path to the INI-style config")
    p_run.add_argument("--out", default=None,
                       help="output directory (default: [output] directory key)")

    p_val = sub.add_parser("validate", help="parse and validate a config, then exit")
    p_val.add_argument("--config", required=True)

    p_sweep = sub.add_parser("sweep", help="run the scenario once per swept value")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--vary", required=True,
                         help="section.key=v1,v2,... applied one value per run")
    p_sweep.add_argument("--out", default=None, help="parent output directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            load_config(args.config)
            print("config ok")
            return 0
        if args.command == "run":
            cfg = load_config(args.config)
            out = Path(args.out) if args.out else Path(cfg.out_directory)
            status = run_scenario(cfg, out)
            print(f"run finished with status {status}; artifacts in {out}")
            return status
        if args.command == "sweep":
            text = Path(args.config).read_text(encoding="utf-8")
            if "=" not in args.vary:
                raise ConfigError("--vary must look like section.key=v1,v2,...")
            dotted, _, joined = args.vary.partition("=")
            values = [tok for tok in joined.split(",") if tok]
            if not values:
                raise ConfigError("--vary needs at least one value")
            base = parse_config(text)
            parent = Path(args.out) if args.out else Path(base.out_directory)
            worst = 0
            for value in values:
                cfg = config_from_overrides(text, {dotted: value})
                label = f"{dotted.replace('.', '_')}_{value}"
                status = run_scenario(cfg, parent / f"sweep_{label}")
                print(f"sweep {dotted}={value}: status {status}")
                worst = max(worst, status)
            return worst
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
