import argparse

from src.errors import EXIT_OK
from src.services import BoundsService
from src.services.bounds_service import TABLE_M, TABLE_P

COROLLARY_EPS = (0.01, 0.05, 0.1, 0.2, 0.5)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "bounds",
        parents=parents,
        help="maximum relative error eps at reliability 1 - delta",
    )
    parser.add_argument("--p", type=int, nargs="+", default=list(TABLE_P), help="independence degrees")
    parser.add_argument("--M", dest="capacity", type=int, nargs="+", default=list(TABLE_M), help="buffer sizes")
    parser.add_argument("--delta", type=float, default=0.05)
    parser.add_argument("--corollary", action="store_true", help="also print the M = 576/eps^2 reliability")
    parser.set_defaults(handler=run)


def format_table(ps, capacities, rows) -> str:
    lines = ["M".rjust(9) + "".join(f"p={p}".rjust(9) for p in ps)]
    for capacity, row in zip(capacities, rows):
        lines.append(str(capacity).rjust(9) + "".join(cell.as_percent().rjust(9) for cell in row))
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    rows = BoundsService.bounds_table(args.p, args.capacity, args.delta)
    print(f"maximum error eps with probability {1 - args.delta:g}")
    print(format_table(args.p, args.capacity, rows))
    if args.corollary:
        print()
        print("eps        M=576/eps^2     delta")
        for eps in COROLLARY_EPS:
            bound = BoundsService.corollary_reliability(eps)
            print(f"{eps:<10g} {bound.capacity:<15.0f} {bound.delta:.5f}")
    return EXIT_OK
