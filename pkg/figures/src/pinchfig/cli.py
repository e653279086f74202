"""Command line: ``figures <kind> --in <csv>... --out <png>``."""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .plots import FigureSpec, plot_gain_vs_n, plot_kappa_sweep

KINDS = {
    "gain-vs-n": ("gain_vs_N", plot_gain_vs_n),
    "kappa-sweep": ("kappa_sweep", plot_kappa_sweep),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render pinchsim sweep CSVs to image files"
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for name in KINDS:
        p = sub.add_parser(name)
        p.add_argument("--in", dest="inputs", nargs="+", required=True, help="input CSVs")
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--linear", action="store_true", help="plot linear gain, not dB")
        p.add_argument("--title", default=None)
        p.add_argument("--xlabel", default=None)
        p.add_argument("--ylabel", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kind, render = KINDS[args.kind]
    spec = FigureSpec(
        inputs=args.inputs,
        output=args.out,
        kind=kind,
        use_db=not args.linear,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        render(spec)
    except (SchemaError, OSError) as err:
        print(f"figures: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
