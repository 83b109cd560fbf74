import argparse
import logging

from src.commands.common import experiment_config, iceberg_parent, input_parent
from src.errors import EXIT_OK, UsageError
from src.services import BoundsService, CorpusService, ExactService

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "exact",
        parents=parents + [input_parent(), iceberg_parent()],
        help="exact n-gram statistics by full tabulation",
    )
    lengths = parser.add_mutually_exclusive_group(required=True)
    lengths.add_argument("--n", type=int, help="n-gram length")
    lengths.add_argument("--n-max", type=int, help="report distinct counts for every length 1..K")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Print the exact distinct count, total, entropy and iceberg count of
    the stream, with the data-agnostic view-size estimates alongside.
    """
    if args.n_max is not None:
        if args.n_max < 1:
            raise UsageError(f"--n-max must be positive, got {args.n_max}")
        config = experiment_config(args, n=args.n_max)
        counts = ExactService.exact_distinct_by_length(
            CorpusService.stream_for(config), args.n_max, config.oracle_max_keys
        )
        for k, count in enumerate(counts, start=1):
            print(f"n={k}\tdistinct={count}")
        return EXIT_OK

    config = experiment_config(args, n=args.n)
    stats = ExactService.exact_stats(CorpusService.stream_for(config), config.n, config.oracle_max_keys)
    iceberg = ExactService.exact_iceberg(stats, config.iceberg)
    cells = float(stats.alphabet_size) ** stats.n
    agnostic = BoundsService.agnostic_estimates(cells, stats.total)

    print(f"n:                     {stats.n}")
    print(f"distinct:              {stats.distinct}")
    print(f"total (N):             {stats.total}")
    print(f"entropy (bits):        {stats.entropy_bits:.6f}")
    print(f"iceberg [{config.iceberg.describe()}]: {iceberg}")
    print(f"alphabet:              {stats.alphabet_size}")
    print(f"standard occupancy:    {agnostic.standard_expected_distinct:.1f}")
    print(f"unoccupied-cells (literal): {agnostic.literal_unoccupied:.1f}")
    logger.info("Exact statistics for %s computed", config.input_path or "zipf stream")
    return EXIT_OK
