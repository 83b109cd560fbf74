from abc import ABC, abstractmethod
from collections import deque
from typing import Iterable, Optional, Sequence

from src.errors import UsageError
from src.models.symbol_table import SymbolTable
from src.schemas import HashFamily, HashFamilyConfig


class NgramHasher(ABC):
    """Hash of the n most recent symbols of a stream.

    Subclasses provide hash_full (from scratch) and _advance (the update
    applied when the oldest symbol leaves and a new one enters). After every
    slide, current equals hash_full(window).
    """

    family: HashFamily

    def __init__(self, config: HashFamilyConfig, tables: list[SymbolTable], seed: int = 0):
        self.config = config
        self.n = config.n
        self.width = config.width
        self.mask = (1 << config.width) - 1
        self.tables = tables
        self.seed = seed
        self.window: deque[int] = deque(maxlen=config.n)
        self.current: Optional[int] = None

    @classmethod
    def table_count(cls, config: HashFamilyConfig) -> int:
        return 1

    @abstractmethod
    def hash_full(self, ngram: Sequence[int]) -> int:
        """Hash of an n-symbol sequence computed from scratch."""

    @abstractmethod
    def _advance(self, outgoing: int, incoming: int) -> int:
        """Hash of the next window; self.window still holds the previous one."""

    def _check_length(self, ngram: Sequence[int]) -> None:
        if len(ngram) != self.n:
            raise UsageError(f"expected an n-gram of length {self.n}, got {len(ngram)}")

    def warm_up(self, symbols: Iterable[int]) -> int:
        symbols = list(symbols)
        if len(symbols) != self.n:
            raise UsageError(f"warm_up needs exactly n={self.n} symbols, got {len(symbols)}")
        self.window.clear()
        self.window.extend(symbols)
        self.current = self.hash_full(self.window)
        return self.current

    def slide(self, incoming: int) -> int:
        if self.current is None:
            raise UsageError("slide called before the window was warmed up")
        self.current = self._advance(self.window[0], incoming)
        self.window.append(incoming)
        return self.current

    def absorb(self, symbol: int) -> Optional[int]:
        """Feed one stream symbol; returns the window hash once n symbols are in."""
        if self.current is not None:
            return self.slide(symbol)
        self.window.append(symbol)
        if len(self.window) == self.n:
            self.current = self.hash_full(self.window)
        return self.current

    def extend(self, prefix_hash: int, k: int) -> int:
        raise UsageError(f"the {self.family.value} family has no semi-recursive extension")

    def window_key(self) -> tuple[int, ...]:
        return tuple(self.window)

    def reset(self) -> None:
        self.window.clear()
        self.current = None
