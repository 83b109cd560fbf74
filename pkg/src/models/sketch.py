import logging
from typing import Callable, Hashable, Optional

import numpy as np

from src.errors import ConfigurationError, LevelExhaustedError, UndefinedEstimateError
from src.schemas import StreamStats

logger = logging.getLogger(__name__)


class Sketch:
    """Adaptive probing buffer over hashed n-grams.

    Keeps every distinct key whose hash has its `level` low-order bits all
    zero, together with its exact occurrence count. When more than
    `capacity` keys are held, the level is raised and non-qualifying keys
    are dropped until the buffer fits. A key that qualifies at the final
    level qualified at every earlier one, so its count is exact.
    """

    def __init__(self, capacity: int, width: int, level: int = 0):
        if capacity < 1:
            raise ConfigurationError(f"sketch capacity M must be positive, got {capacity}")
        if not 1 <= width <= 64:
            raise ConfigurationError(f"hash width L must lie in [1, 64], got {width}")
        if not 0 <= level <= width:
            raise ConfigurationError(f"initial level must lie in [0, L], got {level}")
        self.capacity = capacity
        self.width = width
        self.level = level
        self.mask = (1 << level) - 1
        self.counts: dict[Hashable, int] = {}
        self.hashes: dict[Hashable, int] = {}
        self.total = 0

    def passes(self, hash_value: int) -> bool:
        return not hash_value & self.mask

    def skip(self) -> None:
        """Count an n-gram whose hash does not qualify at the current level."""
        self.total += 1

    def offer(self, key: Hashable, hash_value: int) -> None:
        self.total += 1
        if hash_value & self.mask:
            return
        count = self.counts.get(key)
        if count is not None:
            self.counts[key] = count + 1
            return
        self.counts[key] = 1
        self.hashes[key] = hash_value
        if len(self.counts) > self.capacity:
            self._raise_level()

    def _raise_level(self) -> None:
        while len(self.counts) > self.capacity:
            if self.level >= self.width:
                partial = len(self.counts) * 2.0**self.level
                logger.warning("Level exhausted at t=%d with %d keys buffered", self.level, len(self.counts))
                raise LevelExhaustedError(self.level, len(self.counts), partial, self.width)
            self.level += 1
            self.mask = (1 << self.level) - 1
            dropped = [key for key, value in self.hashes.items() if value & self.mask]
            for key in dropped:
                del self.counts[key]
                del self.hashes[key]
            logger.debug("Raised level to %d, dropped %d keys", self.level, len(dropped))

    @property
    def buffered(self) -> int:
        return len(self.counts)

    def estimate_distinct(self) -> float:
        return self.buffered * 2.0**self.level

    def estimate_entropy(self) -> float:
        """One-pass Shannon entropy in bits: -2^t * sum over buffered keys of P log2 P."""
        if not self.counts or self.total == 0:
            raise UndefinedEstimateError("entropy is undefined for an empty buffer")
        probabilities = np.fromiter(self.counts.values(), dtype=np.float64, count=len(self.counts)) / self.total
        value = -(2.0**self.level) * float(np.sum(probabilities * np.log2(probabilities)))
        return value if value > 0 else 0.0

    def estimate_iceberg(self, predicate: Callable[[int], bool]) -> float:
        return sum(1 for count in self.counts.values() if predicate(count)) * 2.0**self.level

    def stats(self, predicate: Optional[Callable[[int], bool]] = None) -> StreamStats:
        entropy = self.estimate_entropy() if self.counts and self.total else None
        return StreamStats(
            distinct_estimate=self.estimate_distinct(),
            level=self.level,
            buffered=self.buffered,
            total=self.total,
            entropy_estimate=entropy,
            iceberg_estimate=self.estimate_iceberg(predicate) if predicate is not None else None,
        )


class MultiSketch:
    """One sketch per n-gram length 1..n_max, all fed from a single pass."""

    def __init__(self, n_max: int, capacity: int, width: int):
        if n_max < 1:
            raise ConfigurationError(f"n_max must be positive, got {n_max}")
        self.n_max = n_max
        self.sketches = [Sketch(capacity, width) for _ in range(n_max)]

    def offer_suffixes(self, window, hashes: list[int]) -> None:
        """Offer the k-gram ending at the current position to sketch k, for every k."""
        size = len(window)
        for k, hash_value in enumerate(hashes, start=1):
            sketch = self.sketches[k - 1]
            if sketch.passes(hash_value):
                sketch.offer(tuple(window[i] for i in range(size - k, size)), hash_value)
            else:
                sketch.skip()

    def __getitem__(self, k: int) -> Sketch:
        """Sketch for k-grams (1-based)."""
        return self.sketches[k - 1]

    def estimates(self) -> list[float]:
        return [sketch.estimate_distinct() for sketch in self.sketches]


