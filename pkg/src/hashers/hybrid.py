from typing import Sequence

from src.hashers.base import NgramHasher
from src.schemas import HashFamily, HashFamilyConfig


class HybridHasher(NgramHasher):
    """Window split into p equal pieces, piece j hashed with table j by XOR.

    Sliding moves the first symbol of each piece into the previous piece, so
    each boundary symbol swaps its old-piece contribution for its new-piece
    one: O(p) work, independent of n.
    """

    family = HashFamily.HYBRID

    def __init__(self, config: HashFamilyConfig, tables, seed: int = 0):
        super().__init__(config, tables, seed)
        self.pieces = config.pieces
        self.piece_length = config.n // config.pieces

    @classmethod
    def table_count(cls, config: HashFamilyConfig) -> int:
        return config.pieces

    def hash_full(self, ngram: Sequence[int]) -> int:
        self._check_length(ngram)
        value = 0
        for i, symbol in enumerate(ngram):
            value ^= self.tables[i // self.piece_length].lookup(symbol)
        return value

    def _advance(self, outgoing: int, incoming: int) -> int:
        tables = self.tables
        value = self.current ^ tables[0].lookup(outgoing)
        for piece in range(1, self.pieces):
            boundary = self.window[piece * self.piece_length]
            value ^= tables[piece].lookup(boundary) ^ tables[piece - 1].lookup(boundary)
        return value ^ tables[-1].lookup(incoming)
