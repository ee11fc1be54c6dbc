"""adp-fig: render figures from adp experiment CSVs.

    adp-fig <kind> --in TABLE [TABLE ...] --out IMAGE [--dpi N]

Kinds and their inputs (in --in order):

    data_plot        data_<a>.csv
    filter_response  filters.csv
    reconstruction   recon_<a>.csv
    trace            trace_<a>.csv [recon_<a>.csv for the baseline]
    b_heatmap        b_opt_<a>.csv
    row              trace_<a>.csv recon_<a>.csv b_opt_<a>.csv

Exit codes: 0 success, 1 validation error (unknown kind, bad table, missing
column).
"""

from __future__ import annotations

import argparse
import sys

from .csvio import MissingColumnError
from .render import FIGURE_KINDS, FigureSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="adp-fig", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("kind", choices=sorted(FIGURE_KINDS))
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="TABLE", help="input CSV table(s)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=120)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(kind=args.kind, inputs=args.inputs, outpath=args.out, dpi=args.dpi)
        render(spec)
    except (MissingColumnError, ValueError, OSError) as exc:
        print(f"adp-fig: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
