from abc import abstractmethod
from typing import Sequence

from src.hashers.base import NgramHasher
from src.gf2 import poly_mulmod, rotate_left, x_power_mod
from src.schemas import HashFamily, HashFamilyConfig


class PolynomialHasher(NgramHasher):
    """h(a1..an) = h1(a1) x^(n-1) + ... + h1(an) over GF(2)[x] modulo some polynomial.

    Sliding: h' = x h - h1(out) x^n + h1(in).
    """

    @abstractmethod
    def _times_x(self, value: int) -> int:
        """Multiply by x in the family's ring."""

    @abstractmethod
    def _shifted_out(self, symbol: int) -> int:
        """h1(symbol) * x^n reduced."""

    def hash_full(self, ngram: Sequence[int]) -> int:
        self._check_length(ngram)
        lookup = self.tables[0].lookup
        value = 0
        for symbol in ngram:
            value = self._times_x(value) ^ lookup(symbol)
        return value

    def _advance(self, outgoing: int, incoming: int) -> int:
        return self._times_x(self.current) ^ self._shifted_out(outgoing) ^ self.tables[0].lookup(incoming)


class CyclicHasher(PolynomialHasher):
    """Modulo x^L + 1: multiplying by x is an L-bit rotate-left."""

    family = HashFamily.CYCLIC

    def _times_x(self, value: int) -> int:
        return ((value << 1) | (value >> (self.width - 1))) & self.mask

    def _shifted_out(self, symbol: int) -> int:
        return rotate_left(self.tables[0].lookup(symbol), self.n, self.width)


class GeneralHasher(PolynomialHasher):
    """Modulo an irreducible polynomial of degree L: a pairwise independent family."""

    family = HashFamily.GENERAL

    def __init__(self, config: HashFamilyConfig, tables, seed: int = 0):
        super().__init__(config, tables, seed)
        self.poly = config.poly
        self._overflow = 1 << config.width
        self._x_to_n = x_power_mod(config.n, config.poly)
        self._outgoing: dict[int, int] = {}

    def _times_x(self, value: int) -> int:
        value <<= 1
        if value & self._overflow:
            value ^= self.poly
        return value

    def _shifted_out(self, symbol: int) -> int:
        value = self._outgoing.get(symbol)
        if value is None:
            value = self._outgoing[symbol] = poly_mulmod(
                self.tables[0].lookup(symbol), self._x_to_n, self.poly
            )
        return value
