"""Command line entry point: ``defect-diode {sweep,reproduce,resonance}``."""

from __future__ import annotations

import argparse
import sys

from defect_diode.spectrum import REFERENCE_DEVICE, ResonanceInterval, find_resonances
from defect_diode.sweep import PRESETS, ConfigError, load_config, reproduce, write_scenario


def _positive_int(raw: str) -> int:
    n = int(raw)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defect-diode",
        description="Steady-state heat valve / diode of two strain-tuned coupled defects.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--threads", type=_positive_int, default=None)

    p = sub.add_parser("reproduce", help="run a figure preset")
    p.add_argument("figure", choices=sorted(PRESETS))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=_positive_int, default=None)

    p = sub.add_parser("resonance", help="print voltages where omega_L = omega_R")
    p.add_argument("--vp-min", type=float, default=-60.0)
    p.add_argument("--vp-max", type=float, default=40.0)
    p.add_argument("--grid", type=int, default=2001)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            scenario = load_config(args.config)
            out = args.out[:-4] if args.out.endswith(".csv") else args.out
            for path in write_scenario(scenario, out, threads=args.threads):
                print(path)
        elif args.command == "reproduce":
            for path in reproduce(args.figure, args.out, threads=args.threads):
                print(path)
        else:
            found = find_resonances(REFERENCE_DEVICE, (args.vp_min, args.vp_max), args.grid)
            if isinstance(found, ResonanceInterval):
                print(f"resonant on the whole range [{found.vp_min:g}, {found.vp_max:g}] V")
            elif not found:
                print("no resonance in range")
            for v in found if isinstance(found, list) else ():
                print(f"{v:.6f}")
    except (ConfigError, OSError, ValueError, RuntimeError) as exc:
        print(f"defect-diode: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
