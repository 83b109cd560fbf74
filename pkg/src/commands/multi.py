import argparse
import sys

from src.commands.common import experiment_config, input_parent, sketch_parent
from src.errors import EXIT_OK
from src.schemas import HashFamily
from src.services import ExperimentService


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "multi",
        parents=parents + [input_parent(), sketch_parent()],
        help="estimate every n-gram length 1..K in one pass",
    )
    parser.add_argument("--n-max", type=int, required=True)
    parser.set_defaults(handler=run, family=HashFamily.NWISE)


def run(args: argparse.Namespace) -> int:
    config = experiment_config(args, n=args.n_max)
    results, summaries = ExperimentService.run_multi(config, args.n_max)
    if config.csv_path is not None:
        ExperimentService.save_csv(config.csv_path, ExperimentService.write_multi_csv, results, summaries)
        for k, summary in summaries.items():
            exact = next(row.exact for row in results if row.k == k)
            print(f"n={k}\texact={exact}\tp95={summary.p95:.4f}\tmean={summary.mean:.4f}")
    else:
        ExperimentService.write_multi_csv(sys.stdout, results, summaries)
    return EXIT_OK
