"""Command line front end: one CSV in, one figure out."""

import argparse
import sys

from . import __version__
from .render import KINDS, SCALES, FigureSpec, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chirascope-plots",
        description="Render a chirascope CSV as a figure (PNG or SVG).")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--in-csv", required=True, help="input CSV path")
    parser.add_argument("--kind", required=True, choices=KINDS,
                        help="which CSV schema the input follows")
    parser.add_argument("--out", required=True,
                        help="output image path (.png or .svg)")
    parser.add_argument("--scale", choices=SCALES, default="linear",
                        help="color scale for nonzero values")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = FigureSpec(input_csv=args.in_csv, kind=args.kind,
                      output=args.out, scale=args.scale)
    try:
        render(spec)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
