"""`plot` command: results CSV in, figures and a manifest out."""

from __future__ import annotations

import argparse
import sys

from .figures import PHASES, FigureSpec, plot_results


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render benchmark result CSVs as figures"
    )
    parser.add_argument("--in", dest="csv_path", required=True, help="results CSV")
    parser.add_argument("--phase", choices=PHASES + ("replay",), default=None,
                        help="restrict to one phase (default: all)")
    parser.add_argument("--out", dest="out_dir", required=True, help="output directory")
    parser.add_argument("--format", choices=("svg", "png"), default="svg")
    parser.add_argument("--group-by", default="structure",
                        help="comma-separated series columns (default: structure)")
    args = parser.parse_args(argv)
    spec = FigureSpec(
        csv_path=args.csv_path,
        out_dir=args.out_dir,
        phases=(args.phase,) if args.phase else PHASES,
        series_keys=tuple(args.group_by.split(",")),
        image_format=args.format,
    )
    for path in plot_results(spec):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
