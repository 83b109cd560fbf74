import argparse
import logging
from pathlib import Path

from src.commands.common import zipf_config
from src.config import get_settings
from src.errors import EXIT_OK
from src.services import CorpusService

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("zipf", parents=parents, help="write a synthetic Zipfian stream to a file")
    parser.add_argument("--zipf", required=True, metavar="s,alphabet,N")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--output", type=Path, required=True)
    parser.add_argument("--records", action="store_true", help="4-byte little-endian symbols instead of bytes")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    seed = get_settings().seed if args.seed is None else args.seed
    config = zipf_config(args.zipf, seed)
    written = CorpusService.write_zipf(config, args.output, records=args.records)
    print(f"wrote {config.length} symbols ({written} bytes) to {args.output}")
    return EXIT_OK
