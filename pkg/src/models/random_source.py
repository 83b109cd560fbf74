import os
from typing import Optional

import numpy as np

from src.schemas import GeneratorKind

MASK64 = (1 << 64) - 1
WORD_MAX = np.iinfo(np.uint64).max
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
TABLE_STRIDE = 0xD1B54A32D192ED03

_BIT_GENERATORS = {
    GeneratorKind.DEFAULT_PRNG: np.random.PCG64,
    GeneratorKind.MERSENNE_TWISTER: np.random.MT19937,
    GeneratorKind.PHILOX: np.random.Philox,
    GeneratorKind.OS_ENTROPY_SNAPSHOT: np.random.PCG64,
}


def splitmix64(value: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit mixing bijection."""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def run_seed(base_seed: int, run_index: int) -> int:
    """Seed of run i: splitmix64(base + i * golden gamma)."""
    return splitmix64((base_seed + run_index * GOLDEN_GAMMA) & MASK64)


def table_seed(seed: int, table_index: int) -> int:
    """Sub-seed of the table at the given index (index 0 keeps the seed)."""
    return (seed ^ (table_index * TABLE_STRIDE)) & MASK64


def resolve_seed(seed: Optional[int], kind: GeneratorKind) -> int:
    """Snapshot OS entropy once; every other kind uses the seed as given."""
    if kind is GeneratorKind.OS_ENTROPY_SNAPSHOT or seed is None:
        return int.from_bytes(os.urandom(8), "little")
    return seed & MASK64


class RandomSource:
    """Seeded stream of uniform raw 64-bit words, consumed in blocks.

    The same (seed, kind) yields the same words on every platform since the
    numpy bit generators are specified bit-exactly.
    """

    def __init__(self, seed: int, kind: GeneratorKind = GeneratorKind.DEFAULT_PRNG, block_size: int = 4096):
        self.seed = seed & MASK64
        self.kind = kind
        self.block_size = block_size
        self._generator = np.random.Generator(_BIT_GENERATORS[kind](self.seed))
        self._block: list[int] = []
        self._cursor = 0

    def next_bits(self, bits: int) -> int:
        """Uniform integer in [0, 2^bits) from the top bits of the next word."""
        if self._cursor == len(self._block):
            self._block = self._generator.integers(
                0, WORD_MAX, size=self.block_size, dtype=np.uint64, endpoint=True
            ).tolist()
            self._cursor = 0
        word = self._block[self._cursor]
        self._cursor += 1
        return word >> (64 - bits)

    @property
    def generator(self) -> np.random.Generator:
        """A fresh numpy Generator positioned at the start of this seed's stream."""
        return np.random.Generator(_BIT_GENERATORS[self.kind](self.seed))
