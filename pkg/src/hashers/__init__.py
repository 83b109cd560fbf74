# This file makes the hashers directory a package
import logging
from typing import Optional

from src.config import get_settings
from src.hashers.base import NgramHasher
from src.hashers.fully_random import FullyRandomHasher
from src.hashers.hybrid import HybridHasher
from src.hashers.id37 import ID37Hasher
from src.hashers.nwise import NWiseHasher
from src.hashers.polynomial import CyclicHasher, GeneralHasher
from src.models.random_source import RandomSource, resolve_seed, table_seed
from src.models.symbol_table import SymbolTable
from src.schemas import GeneratorKind, HashFamily, HashFamilyConfig

logger = logging.getLogger(__name__)

FAMILIES: dict[HashFamily, type[NgramHasher]] = {
    HashFamily.NWISE: NWiseHasher,
    HashFamily.CYCLIC: CyclicHasher,
    HashFamily.GENERAL: GeneralHasher,
    HashFamily.ID37: ID37Hasher,
    HashFamily.HYBRID: HybridHasher,
    HashFamily.RANDOM: FullyRandomHasher,
}


def build_hasher(
    config: HashFamilyConfig,
    seed: Optional[int] = None,
    kind: GeneratorKind = GeneratorKind.DEFAULT_PRNG,
) -> NgramHasher:
    """Create a hasher with fresh tables; table i draws from sub-seed seed XOR i*stride."""
    seed = resolve_seed(seed, kind)
    hasher_cls = FAMILIES[config.family]
    block_size = get_settings().rng_block_size
    tables = [
        SymbolTable(RandomSource(table_seed(seed, index), kind, block_size), config.width)
        for index in range(hasher_cls.table_count(config))
    ]
    logger.debug("Built %s hasher n=%d L=%d seed=%d", config.family.value, config.n, config.width, seed)
    return hasher_cls(config, tables, seed)


__all__ = [
    "FAMILIES",
    "NgramHasher",
    "NWiseHasher",
    "CyclicHasher",
    "GeneralHasher",
    "ID37Hasher",
    "HybridHasher",
    "FullyRandomHasher",
    "build_hasher",
]
