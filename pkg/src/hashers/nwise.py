from typing import Iterator, Sequence

from src.errors import UsageError
from src.hashers.base import NgramHasher
from src.schemas import HashFamily, HashFamilyConfig


class NWiseHasher(NgramHasher):
    """XOR of per-position tables: n-wise independent, not recursive.

    Table i hashes the symbol i positions back from the window end (table 0
    sees the newest symbol), so the hash of a (k+1)-gram is the hash of its
    k-gram suffix XOR one lookup. With unsafe_shared_table every position
    uses table 0 and slide becomes the O(1) update over hashed values; that
    variant is not even pairwise independent.
    """

    family = HashFamily.NWISE

    @classmethod
    def table_count(cls, config: HashFamilyConfig) -> int:
        return 1 if config.unsafe_shared_table else config.n

    def _table(self, position_from_end: int):
        if self.config.unsafe_shared_table:
            return self.tables[0]
        return self.tables[position_from_end]

    def hash_full(self, ngram: Sequence[int]) -> int:
        self._check_length(ngram)
        value = 0
        last = len(ngram) - 1
        for i, symbol in enumerate(ngram):
            value ^= self._table(last - i).lookup(symbol)
        return value

    def _advance(self, outgoing: int, incoming: int) -> int:
        if self.config.unsafe_shared_table:
            lookup = self.tables[0].lookup
            return self.current ^ lookup(outgoing) ^ lookup(incoming)
        tables = self.tables
        window = self.window
        n = self.n
        value = tables[0].lookup(incoming)
        for i in range(1, n):
            value ^= tables[i].lookup(window[n - i])
        return value

    def extend(self, prefix_hash: int, k: int) -> int:
        """Hash of the (k+1)-gram ending at the current position from its k-gram hash."""
        if not 1 <= k < self.n:
            raise UsageError(f"extend needs 1 <= k < n={self.n}, got k={k}")
        if len(self.window) < k + 1:
            raise UsageError(f"extend to {k + 1}-gram needs {k + 1} symbols, window has {len(self.window)}")
        return prefix_hash ^ self._table(k).lookup(self.window[-(k + 1)])

    def suffix_hashes(self) -> Iterator[int]:
        """Hashes of the 1-, 2-, ... grams ending at the current position."""
        window = self.window
        if not window:
            return
        value = self._table(0).lookup(window[-1])
        yield value
        for k in range(1, len(window)):
            value = self.extend(value, k)
            yield value

    def push(self, symbol: int) -> list[int]:
        """Append a symbol and return the hashes of every suffix length."""
        self.window.append(symbol)
        hashes = list(self.suffix_hashes())
        if len(self.window) == self.n:
            self.current = hashes[-1]
        return hashes
