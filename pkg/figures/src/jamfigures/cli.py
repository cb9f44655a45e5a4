"""Figure CLI: `figures --kind <k> --in <csv...> --out <png>`."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_KINDS, FigureSpec, render
from .schema import SchemaError


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="figures", description=__doc__)
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument(
        "--in", dest="inputs", required=True, nargs="+", metavar="CSV",
        help="input CSV file(s); loss_bars accepts several replications",
    )
    parser.add_argument("--out", required=True, metavar="PNG", help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = FigureSpec(kind=args.kind, inputs=tuple(args.inputs), output=args.out)
        path = render(spec)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
