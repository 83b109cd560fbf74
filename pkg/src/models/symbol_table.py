from typing import Hashable

from src.config import get_settings
from src.errors import ConfigurationError
from src.models.random_source import RandomSource, resolve_seed
from src.schemas import GeneratorKind


class SymbolTable:
    """Lazily populated random lookup table from symbol ids to L-bit values.

    A value is drawn the first time a symbol is looked up and is stable
    afterwards; the alphabet need not be known in advance.
    """

    def __init__(self, source: RandomSource, width: int):
        if not 1 <= width <= 64:
            raise ConfigurationError(f"table width L must lie in [1, 64], got {width}")
        self.source = source
        self.width = width
        self.entries: dict[Hashable, int] = {}

    def lookup(self, symbol: Hashable) -> int:
        value = self.entries.get(symbol)
        if value is None:
            value = self.entries[symbol] = self.source.next_bits(self.width)
        return value

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, symbol: Hashable) -> bool:
        return symbol in self.entries


def new_table(seed: int, width: int, kind: GeneratorKind = GeneratorKind.DEFAULT_PRNG) -> SymbolTable:
    """Create an empty table drawing from a freshly seeded source."""
    if not 1 <= width <= 64:
        raise ConfigurationError(f"table width L must lie in [1, 64], got {width}")
    return SymbolTable(RandomSource(resolve_seed(seed, kind), kind, get_settings().rng_block_size), width)
