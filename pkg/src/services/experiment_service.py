import csv
import heapq
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import NamedTuple, Optional, Sequence, TextIO

import numpy as np

from src.errors import DomainError, LevelExhaustedError, UsageError
from src.hashers import build_hasher
from src.models.random_source import run_seed
from src.schemas import (
    ErrorSummary,
    ExactStats,
    ExperimentConfig,
    HashFamily,
    HashFamilyConfig,
    MultiRunResult,
    RunResult,
    SummaryStats,
)
from src.services.bounds_service import BoundsService
from src.services.corpus_service import CorpusService
from src.services.exact_service import ExactService
from src.services.sketch_service import SketchService

logger = logging.getLogger(__name__)

ESTIMATE_HEADER = [
    "run", "seed", "estimate", "exact", "rel_error", "t", "m_prime",
    "entropy_est", "entropy_exact", "iceberg_est", "iceberg_exact",
    "wall_ms", "abs_flag", "status",
]
MULTI_HEADER = ["run", "seed", "k", "estimate", "exact", "rel_error", "t", "m_prime"]
PERCENTILES = (25, 50, 75, 95)
OVERFLOW_WARNING = 0.01


class ExactTruth(NamedTuple):
    """The ground truth each run is scored against."""

    distinct: int
    entropy_bits: float
    iceberg: int


def relative_error(estimate: float, exact: float) -> tuple[float, bool]:
    """|estimate - exact| / exact, or the absolute error flagged when exact is zero."""
    if exact == 0:
        return abs(estimate), True
    return abs(estimate - exact) / exact, False


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".10g")


def _run_estimate(config: ExperimentConfig, run_index: int, exact: ExactTruth) -> RunResult:
    seed = run_seed(config.seed, run_index)
    hasher = build_hasher(config.family_config(), seed, config.rng)
    stream = CorpusService.stream_for(config)
    exact_iceberg = exact.iceberg
    started = time.perf_counter()
    try:
        sketch = SketchService.sketch_stream(stream, hasher, config.capacity)
    except LevelExhaustedError as exc:
        estimate = exc.partial_estimate
        error, flag = relative_error(estimate, exact.distinct)
        logger.warning("Run %d exhausted the hash width at t=%d", run_index, exc.level)
        return RunResult(
            run=run_index, seed=hasher.seed, estimate=estimate, exact=exact.distinct,
            rel_error=error, level=exc.level, buffered=exc.buffered,
            entropy_exact=exact.entropy_bits, iceberg_exact=exact_iceberg,
            abs_flag=flag, status="level_exhausted",
        )
    elapsed = (time.perf_counter() - started) * 1000.0 if config.record_timing else 0.0
    stats = sketch.stats(config.iceberg)
    error, flag = relative_error(stats.distinct_estimate, exact.distinct)
    logger.info(
        "Run %d: estimate=%.1f exact=%d error=%.4f t=%d (%.1f ms)",
        run_index, stats.distinct_estimate, exact.distinct, error, stats.level, elapsed,
    )
    return RunResult(
        run=run_index,
        seed=hasher.seed,
        estimate=stats.distinct_estimate,
        exact=exact.distinct,
        rel_error=error,
        level=stats.level,
        buffered=stats.buffered,
        entropy_estimate=stats.entropy_estimate,
        entropy_exact=exact.entropy_bits,
        iceberg_estimate=stats.iceberg_estimate,
        iceberg_exact=exact_iceberg,
        wall_ms=elapsed,
        abs_flag=flag,
    )


def _run_multi(config: ExperimentConfig, n_max: int, run_index: int, exact: list[int]) -> list[MultiRunResult]:
    seed = run_seed(config.seed, run_index)
    hasher = build_hasher(
        HashFamilyConfig(family=HashFamily.NWISE, n=n_max, width=config.width), seed, config.rng
    )
    multi = SketchService.sketch_multi(CorpusService.stream_for(config), hasher, config.capacity)
    results = []
    for k in range(1, n_max + 1):
        sketch = multi[k]
        estimate = sketch.estimate_distinct()
        results.append(
            MultiRunResult(
                run=run_index, seed=hasher.seed, k=k, estimate=estimate, exact=exact[k - 1],
                rel_error=relative_error(estimate, exact[k - 1])[0],
                level=sketch.level, buffered=sketch.buffered,
            )
        )
    return results


class ExperimentService:
    @staticmethod
    def percentile(errors: Sequence[float], q: float) -> float:
        """
        The k-th largest error with k = R - ceil(qR/100), clamped to [1, R];
        for R=100 and q=95 this is the 5th largest.
        """
        size = len(errors)
        if size == 0:
            raise DomainError("percentile of an empty error list")
        k = size - math.ceil(round(q * size / 100.0, 9))
        k = min(max(k, 1), size)
        return heapq.nlargest(k, errors)[-1]

    @staticmethod
    def error_summary(errors: Sequence[float]) -> Optional[ErrorSummary]:
        if not errors:
            return None
        quantiles = {f"p{q}": ExperimentService.percentile(errors, q) for q in PERCENTILES}
        return ErrorSummary(**quantiles, mean=float(np.mean(errors)))

    @staticmethod
    def median_errors(results: Sequence[RunResult], group: int, exact: int) -> list[float]:
        """Errors of the median estimate of each consecutive group of runs."""
        errors = []
        for start in range(0, len(results) - group + 1, group):
            estimates = [result.estimate for result in results[start:start + group]]
            errors.append(relative_error(float(np.median(estimates)), exact)[0])
        return errors

    @staticmethod
    def summarize(results: Sequence[RunResult], exact: ExactStats, config: ExperimentConfig) -> SummaryStats:
        completed = [result for result in results if result.status == "ok"]
        entropy_errors = [
            relative_error(result.entropy_estimate, result.entropy_exact)[0]
            for result in completed
            if result.entropy_estimate is not None
        ]
        iceberg_errors = [
            relative_error(result.iceberg_estimate, result.iceberg_exact)[0]
            for result in completed
            if result.iceberg_estimate is not None
        ]
        median = None
        if config.median_of:
            if config.median_of > len(results):
                logger.warning("median-of-%d needs at least that many runs", config.median_of)
            median = ExperimentService.error_summary(
                ExperimentService.median_errors(results, config.median_of, exact.distinct)
            )
        return SummaryStats(
            exact_distinct=exact.distinct,
            exact_entropy=exact.entropy_bits,
            exact_iceberg=exact.iceberg(config.iceberg),
            distinct=ExperimentService.error_summary([result.rel_error for result in results]),
            entropy=ExperimentService.error_summary(entropy_errors),
            iceberg=ExperimentService.error_summary(iceberg_errors),
            median=median,
        )

    @staticmethod
    def run_estimate(config: ExperimentConfig) -> tuple[list[RunResult], SummaryStats]:
        """
        R independent runs, each with fresh tables seeded from the run index,
        each streaming the input once. Rows come back sorted by run index.
        """
        config.family_config()
        exact = ExactService.exact_stats(CorpusService.stream_for(config), config.n, config.oracle_max_keys)
        overflow = BoundsService.level_overflow_bound(2, exact.distinct, config.capacity, config.width)
        if overflow > OVERFLOW_WARNING:
            logger.warning(
                "L=%d may be too small for %d distinct n-grams (overflow bound %.3g)",
                config.width, exact.distinct, overflow,
            )
        truth = ExactTruth(exact.distinct, exact.entropy_bits, exact.iceberg(config.iceberg))
        runs = range(config.runs)
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(_run_estimate, [config] * config.runs, runs, [truth] * config.runs))
        else:
            results = [_run_estimate(config, index, truth) for index in runs]
        results.sort(key=lambda result: result.run)
        summary = ExperimentService.summarize(results, exact, config)
        ExperimentService._log_comparison(summary, config)
        return results, summary

    @staticmethod
    def _log_comparison(summary: SummaryStats, config: ExperimentConfig) -> None:
        logger.info(
            "Distinct error percentiles: p25=%.4f p50=%.4f p75=%.4f p95=%.4f mean=%.4f",
            summary.distinct.p25, summary.distinct.p50, summary.distinct.p75,
            summary.distinct.p95, summary.distinct.mean,
        )
        if config.capacity >= 16:
            bound = BoundsService.epsilon_for(2, config.capacity, 0.05)
            logger.info("Pairwise-independence bound at M=%d: %s", config.capacity, bound.as_percent())

    @staticmethod
    def run_multi(config: ExperimentConfig, n_max: int) -> tuple[list[MultiRunResult], dict[int, ErrorSummary]]:
        """Per-length estimates for k = 1..n_max from one NWise pass per run."""
        if config.family is not HashFamily.NWISE:
            raise UsageError(f"simultaneous estimation needs the nwise family, got {config.family.value}")
        config.family_config(n=n_max)
        exact = ExactService.exact_distinct_by_length(
            CorpusService.stream_for(config), n_max, config.oracle_max_keys
        )
        runs = range(config.runs)
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                batches = list(
                    pool.map(_run_multi, [config] * config.runs, [n_max] * config.runs, runs, [exact] * config.runs)
                )
        else:
            batches = [_run_multi(config, n_max, index, exact) for index in runs]
        results = sorted((row for batch in batches for row in batch), key=lambda row: (row.run, row.k))
        summaries = {
            k: ExperimentService.error_summary([row.rel_error for row in results if row.k == k])
            for k in range(1, n_max + 1)
        }
        return results, summaries

    @staticmethod
    def write_estimate_csv(handle: TextIO, results: Sequence[RunResult], summary: SummaryStats) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ESTIMATE_HEADER)
        for result in results:
            writer.writerow([
                result.run, result.seed, _fmt(result.estimate), result.exact, _fmt(result.rel_error),
                result.level, result.buffered, _fmt(result.entropy_estimate), _fmt(result.entropy_exact),
                _fmt(result.iceberg_estimate), result.iceberg_exact,
                _fmt(result.wall_ms) if result.wall_ms else "0",
                int(result.abs_flag), result.status,
            ])
        for stat in ("p25", "p50", "p75", "p95", "mean"):
            writer.writerow([
                "summary", stat,
                _fmt(getattr(summary.distinct, stat)),
                _fmt(getattr(summary.entropy, stat) if summary.entropy else None),
                _fmt(getattr(summary.iceberg, stat) if summary.iceberg else None),
            ])
        if summary.median is not None:
            for stat in ("p25", "p50", "p75", "p95", "mean"):
                writer.writerow(["median", stat, _fmt(getattr(summary.median, stat)), "", ""])

    @staticmethod
    def write_multi_csv(
        handle: TextIO, results: Sequence[MultiRunResult], summaries: dict[int, ErrorSummary]
    ) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(MULTI_HEADER)
        for row in results:
            writer.writerow([
                row.run, row.seed, row.k, _fmt(row.estimate), row.exact, _fmt(row.rel_error),
                row.level, row.buffered,
            ])
        for k, summary in summaries.items():
            for stat in ("p25", "p50", "p75", "p95", "mean"):
                writer.writerow(["summary", k, stat, _fmt(getattr(summary, stat))])

    @staticmethod
    def save_csv(path: Path, writer, *args) -> None:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer(handle, *args)
        logger.info("Wrote %s", path)
