import argparse
import logging
import sys

from src.commands.common import experiment_config, iceberg_parent, input_parent, sketch_parent
from src.errors import EXIT_OK
from src.services import ExperimentService

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "estimate",
        parents=parents + [input_parent(), sketch_parent(), iceberg_parent()],
        help="multi-run one-pass estimation with error percentiles",
    )
    parser.add_argument("--n", type=int, required=True, help="n-gram length")
    parser.add_argument("--median-of", type=int, default=None, help="also report medians of groups of q runs")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = experiment_config(args, n=args.n)
    results, summary = ExperimentService.run_estimate(config)
    if config.csv_path is not None:
        ExperimentService.save_csv(config.csv_path, ExperimentService.write_estimate_csv, results, summary)
        distinct = summary.distinct
        print(f"exact distinct: {summary.exact_distinct}")
        print(f"relative error  p25={distinct.p25:.4f} p50={distinct.p50:.4f} "
              f"p75={distinct.p75:.4f} p95={distinct.p95:.4f} mean={distinct.mean:.4f}")
        if summary.median is not None:
            print(f"median-of-{config.median_of} p95={summary.median.p95:.4f}")
    else:
        ExperimentService.write_estimate_csv(sys.stdout, results, summary)
    exhausted = sum(1 for result in results if result.status != "ok")
    if exhausted:
        logger.warning("%d of %d runs exhausted the hash width", exhausted, len(results))
    return EXIT_OK
