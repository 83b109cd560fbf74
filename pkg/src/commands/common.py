import argparse
from pathlib import Path
from typing import Optional

from src.config import get_settings
from src.schemas import (
    ExperimentConfig,
    GeneratorKind,
    HashFamily,
    IcebergPredicate,
    SymbolMode,
    ZipfConfig,
)


def hex_int(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a hexadecimal integer: {text!r}") from exc


def input_parent() -> argparse.ArgumentParser:
    """Flags selecting the symbol stream: a file or a synthetic Zipf source."""
    parser = argparse.ArgumentParser(add_help=False)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="file to read symbols from")
    source.add_argument("--zipf", metavar="s,alphabet,N", help="synthetic Zipfian stream")
    parser.add_argument("--mode", type=SymbolMode, choices=list(SymbolMode), default=SymbolMode.BYTES,
                        help="read bytes or UTF-8 code points")
    parser.add_argument("--seed", type=int, default=None, help="base seed (default from NGRAM_SEED)")
    return parser


def sketch_parent() -> argparse.ArgumentParser:
    """Flags shared by the commands that run randomized sketches."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--hash", dest="family", type=HashFamily, choices=list(HashFamily),
                        default=HashFamily.GENERAL)
    parser.add_argument("--L", dest="width", type=int, default=None, help="hash width in bits")
    parser.add_argument("--poly", type=hex_int, default=None, help="general-family modulus, hexadecimal")
    parser.add_argument("--B", dest="base", type=int, default=37, help="ID37 multiplier")
    parser.add_argument("--p", dest="pieces", type=int, default=2, help="hybrid piece count")
    parser.add_argument("--M", dest="capacity", type=int, default=None, help="sketch capacity")
    parser.add_argument("--runs", type=int, default=None)
    parser.add_argument("--rng", type=GeneratorKind, choices=list(GeneratorKind),
                        default=GeneratorKind.DEFAULT_PRNG)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--csv", type=Path, default=None, help="write per-run rows here instead of stdout")
    parser.add_argument("--no-timing", dest="record_timing", action="store_false", default=None)
    return parser


def iceberg_parent() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    predicate = parser.add_mutually_exclusive_group()
    predicate.add_argument("--min-count", type=int, default=None, help="count n-grams with f >= c")
    predicate.add_argument("--exact-count", type=int, default=None, help="count n-grams with f == c")
    return parser


def _pick(value, default):
    return default if value is None else value


def zipf_config(text: str, seed: int) -> ZipfConfig:
    return ZipfConfig.parse(text, seed=seed)


def experiment_config(args: argparse.Namespace, n: Optional[int] = None) -> ExperimentConfig:
    """Merge command-line flags over the environment settings."""
    settings = get_settings()
    seed = _pick(args.seed, settings.seed)
    data = {
        "input_path": args.input,
        "zipf": zipf_config(args.zipf, seed) if args.zipf else None,
        "mode": args.mode,
        "seed": seed,
        "read_chunk_size": settings.read_chunk_size,
        "oracle_max_keys": settings.oracle_max_keys,
        "iceberg": IcebergPredicate(
            min_count=getattr(args, "min_count", None), exact_count=getattr(args, "exact_count", None)
        ),
    }
    if n is not None:
        data["n"] = n
    if hasattr(args, "family"):
        data.update(
            family=args.family,
            width=_pick(args.width, settings.width),
            poly=args.poly,
            base=args.base,
            pieces=args.pieces,
            capacity=_pick(args.capacity, settings.capacity),
            runs=_pick(args.runs, settings.runs),
            rng=args.rng,
            workers=_pick(args.workers, settings.workers),
            csv_path=args.csv,
            record_timing=_pick(args.record_timing, settings.record_timing),
            median_of=getattr(args, "median_of", None),
        )
    return ExperimentConfig(**data)
