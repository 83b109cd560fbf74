import logging
from collections import Counter, deque
from typing import Callable, Iterable, Optional

import numpy as np

from src.config import get_settings
from src.errors import EmptyInputError, OracleCapacityError
from src.schemas import ExactStats

logger = logging.getLogger(__name__)


def entropy_bits(counts: Iterable[int], total: int) -> float:
    """Shannon entropy in bits of the empirical distribution f/N."""
    frequencies = np.fromiter(counts, dtype=np.float64)
    if total == 0 or frequencies.size == 0:
        return 0.0
    probabilities = frequencies / total
    value = -float(np.sum(probabilities * np.log2(probabilities)))
    return value if value > 0 else 0.0


class ExactService:
    @staticmethod
    def exact_stats(symbols: Iterable[int], n: int, max_keys: Optional[int] = None) -> ExactStats:
        """
        Tabulate every n-gram of the stream keyed by its symbol window.
        Raises EmptyInputError when the stream is shorter than n and
        OracleCapacityError when more than max_keys distinct keys appear.
        """
        max_keys = max_keys or get_settings().oracle_max_keys
        window: deque[int] = deque(maxlen=n)
        counts: Counter = Counter()
        alphabet: set[int] = set()
        total = 0
        for symbol in symbols:
            window.append(symbol)
            alphabet.add(symbol)
            if len(window) < n:
                continue
            key = tuple(window)
            if key not in counts and len(counts) >= max_keys:
                raise OracleCapacityError(max_keys)
            counts[key] += 1
            total += 1
        if total == 0:
            raise EmptyInputError(f"stream holds {len(window)} symbols, fewer than n={n}")
        stats = ExactStats(
            n=n,
            distinct=len(counts),
            total=total,
            entropy_bits=entropy_bits(counts.values(), total),
            alphabet_size=len(alphabet),
            counts=dict(counts),
        )
        logger.debug("Exact n=%d: distinct=%d N=%d", n, stats.distinct, total)
        return stats

    @staticmethod
    def exact_iceberg(stats: ExactStats, predicate: Callable[[int], bool]) -> int:
        return stats.iceberg(predicate)

    @staticmethod
    def exact_distinct_by_length(symbols: Iterable[int], n_max: int, max_keys: Optional[int] = None) -> list[int]:
        """Exact distinct k-gram counts for k = 1..n_max in one pass."""
        max_keys = max_keys or get_settings().oracle_max_keys
        window: deque[int] = deque(maxlen=n_max)
        seen: list[set] = [set() for _ in range(n_max)]
        for symbol in symbols:
            window.append(symbol)
            size = len(window)
            for k in range(1, size + 1):
                keys = seen[k - 1]
                keys.add(tuple(window[i] for i in range(size - k, size)))
                if len(keys) > max_keys:
                    raise OracleCapacityError(max_keys)
        if not seen[n_max - 1]:
            raise EmptyInputError(f"stream holds {len(window)} symbols, fewer than n={n_max}")
        return [len(keys) for keys in seen]
