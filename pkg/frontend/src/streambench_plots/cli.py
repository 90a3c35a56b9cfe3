"""Command-line entry point for rendering sweep CSVs."""

import argparse
import sys

from .io import SchemaError
from .render import RenderOptions, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streambench-plot",
        description="Plot measured bandwidth curves from a streambench sweep "
                    "CSV, optionally overlaying fitted model curves")
    parser.add_argument("csv", help="sweep CSV from `streambench run`")
    parser.add_argument("--fit", default=None,
                        help="fit report JSON from `streambench fit`")
    parser.add_argument("--out", required=True,
                        help="output image path (.png or .svg)")
    parser.add_argument("--log-x", action="store_true",
                        help="logarithmic data-moved axis")
    parser.add_argument("--title", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    options = RenderOptions(log_x=args.log_x, title=args.title)
    try:
        result = render(args.csv, args.fit, args.out, options)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"streambench-plot: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path}: {len(result.measured)} measured curves, "
          f"{len(result.model)} model curves", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
