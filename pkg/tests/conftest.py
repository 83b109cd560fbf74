import os
import sys

import pytest

# Add the parent directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config import get_settings  # noqa: E402
from src.models import RandomSource, SymbolTable  # noqa: E402


def symbols(text: str) -> list[int]:
    """Byte symbols of an ASCII string."""
    return list(text.encode("ascii"))


def fixed_table(values: dict[str, int], width: int) -> SymbolTable:
    """A table whose entries for the given characters are pinned in advance."""
    table = SymbolTable(RandomSource(0), width)
    table.entries.update({ord(char): value for char, value in values.items()})
    return table


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Ignore any NGRAM_* variables of the host environment"""
    for key in list(os.environ):
        if key.startswith("NGRAM_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
