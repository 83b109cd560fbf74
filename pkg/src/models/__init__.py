# This file makes the models directory a package
from src.models.random_source import RandomSource
from src.models.symbol_table import SymbolTable, new_table
from src.models.sketch import Sketch, MultiSketch

__all__ = ["RandomSource", "SymbolTable", "new_table", "Sketch", "MultiSketch"]
