"""Command-line interface: offline rendering and physics-only simulation runs.

Exit codes: 0 success, 1 configuration/validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import ConfigError, DomainError
from .render import parse_config, render_to_files, simulate_to_file


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psiwave",
        description="Render audio from a simulated 1-D quantum wave.",
    )
    parser.add_argument("--version", action="version", version=f"psiwave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser("render", help="render a config to a WAV file")
    render.add_argument("--config", required=True, help="path to the JSON config")
    render.add_argument("--out", help="output WAV path (overrides config out_path)")
    render.add_argument("--dump", help="write density frame dumps to this CSV path")
    render.add_argument("--every", type=int, default=1,
                        help="dump every k-th simulation step (default 1)")

    simulate = sub.add_parser("simulate", help="run the simulation only, no audio")
    simulate.add_argument("--config", required=True, help="path to the JSON config")
    simulate.add_argument("--steps", type=int, required=True, help="timesteps to run")
    simulate.add_argument("--dump", required=True, help="CSV path for density rows")
    simulate.add_argument("--every", type=int, default=1,
                          help="dump every k-th simulation step (default 1)")
    return parser


def _read_config(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _read_config(args.config)
        if args.command == "render":
            target = render_to_files(config, out_path=args.out,
                                     dump_path=args.dump, every_steps=args.every)
            print(f"wrote {target}")
        else:
            simulate_to_file(config, steps=args.steps, dump_path=args.dump,
                             every_steps=args.every)
            print(f"wrote {args.dump}")
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
