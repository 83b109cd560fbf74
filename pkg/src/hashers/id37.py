from typing import Sequence

from src.hashers.base import NgramHasher
from src.schemas import HashFamily, HashFamilyConfig


class ID37Hasher(NgramHasher):
    """Randomized integer division: h1(x1) + B h1(x2) + ... + B^(n-1) h1(xn) mod 2^L.

    The oldest symbol sits at B^0, so sliding divides by B using the inverse
    of B modulo 2^L (B odd).
    """

    family = HashFamily.ID37

    def __init__(self, config: HashFamilyConfig, tables, seed: int = 0):
        super().__init__(config, tables, seed)
        modulus = 1 << config.width
        self.base = config.base % modulus
        self._base_inverse = pow(config.base, -1, modulus)
        self._base_top = pow(config.base, config.n - 1, modulus)

    def hash_full(self, ngram: Sequence[int]) -> int:
        self._check_length(ngram)
        lookup = self.tables[0].lookup
        value = 0
        for symbol in reversed(ngram):
            value = (value * self.base + lookup(symbol)) & self.mask
        return value

    def _advance(self, outgoing: int, incoming: int) -> int:
        lookup = self.tables[0].lookup
        return (
            (self.current - lookup(outgoing)) * self._base_inverse + self._base_top * lookup(incoming)
        ) & self.mask
