import logging
from typing import Iterable

from src.errors import UsageError
from src.hashers import NgramHasher, NWiseHasher
from src.models import MultiSketch, Sketch

logger = logging.getLogger(__name__)


class SketchService:
    @staticmethod
    def sketch_stream(symbols: Iterable[int], hasher: NgramHasher, capacity: int) -> Sketch:
        """
        One pass over the stream: every n-gram is hashed recursively and
        offered to a fresh sketch of the given capacity.
        LevelExhaustedError propagates with the partial estimate attached.
        """
        sketch = Sketch(capacity, hasher.width)
        absorb = hasher.absorb
        offer = sketch.offer
        window_key = hasher.window_key
        for symbol in symbols:
            value = absorb(symbol)
            if value is None:
                continue
            if sketch.passes(value):
                offer(window_key(), value)
            else:
                sketch.skip()
        logger.debug(
            "Sketched %d n-grams: t=%d m'=%d estimate=%.1f",
            sketch.total, sketch.level, sketch.buffered, sketch.estimate_distinct(),
        )
        return sketch

    @staticmethod
    def sketch_multi(symbols: Iterable[int], hasher: NgramHasher, capacity: int) -> MultiSketch:
        """
        Simultaneous estimation for every length 1..n in one pass. Only the
        NWise family chains suffix hashes in O(1) per length.
        """
        if not isinstance(hasher, NWiseHasher) or hasher.config.unsafe_shared_table:
            raise UsageError(f"simultaneous estimation needs the nwise family, got {hasher.family.value}")
        multi = MultiSketch(hasher.n, capacity, hasher.width)
        for symbol in symbols:
            multi.offer_suffixes(hasher.window, hasher.push(symbol))
        return multi
