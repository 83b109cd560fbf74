from typing import Sequence

from src.hashers.base import NgramHasher
from src.schemas import HashFamily


class FullyRandomHasher(NgramHasher):
    """Independent uniform value per distinct n-gram, memoized on first sight.

    Fully independent but neither recursive nor memory-light: the table grows
    with the number of distinct n-grams.
    """

    family = HashFamily.RANDOM

    def hash_full(self, ngram: Sequence[int]) -> int:
        self._check_length(ngram)
        return self.tables[0].lookup(tuple(ngram))

    def _advance(self, outgoing: int, incoming: int) -> int:
        key = tuple(self.window)[1:] + (incoming,)
        return self.tables[0].lookup(key)
