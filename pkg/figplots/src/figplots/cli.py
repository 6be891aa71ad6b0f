"""Standalone renderer command: ``figplots render --manifest ... --outdir ...``."""

from __future__ import annotations

import argparse
import sys

from .render import RenderError, render_all


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figplots",
        description="Render simulator CSV families into figures.")
    sub = parser.add_subparsers(dest="command", required=True)
    rend = sub.add_parser("render", help="render every CSV a manifest lists")
    rend.add_argument("--manifest", required=True)
    rend.add_argument("--format", choices=("svg", "png"), default="svg")
    rend.add_argument("--outdir", required=True)
    args = parser.parse_args(argv)

    try:
        written = render_all(args.manifest, args.outdir, args.format)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
