"""Command line: ``eitlambda sweep`` and ``eitlambda verify``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import EITError
from .sweep import ScenarioConfig, load_config, run_sweep


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eitlambda", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("sweep", "write a detuning or control-field sweep as CSV"),
                       ("verify", "check closed forms against the Lindblad dynamics")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", type=Path, help="scenario TOML file (default: built-in detuning sweep)")
        p.add_argument("--output", type=Path, help="CSV path (sweep) or JSON report path (verify)")
        p.add_argument("--channels", help="comma separated channel kinds, overrides the config")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep points")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config) if args.config else ScenarioConfig()
        cfg = cfg.with_overrides(channels=args.channels)
        if args.command == "sweep":
            path = run_sweep(cfg, output=args.output, jobs=max(1, args.jobs))
            print(path)
            return 0
        from .verify import run_verify

        report = run_verify(cfg)
        print(report.to_text())
        if args.output:
            args.output.write_text(report.to_json() + "\n", encoding="utf-8")
        return 0 if report.ok else 1
    except EITError as exc:
        print(f"eitlambda: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
