"""Polynomial arithmetic over GF(2).

A polynomial is a Python int whose bit i is the coefficient of x^i, so
multiplication by x is a left shift and addition is XOR. Reduction moduli
carry their leading x^L term (the integer for L=19 includes 2^19).
"""

import logging
from functools import lru_cache

from src.errors import ConfigurationError

logger = logging.getLogger(__name__)

# 1 + x^2 + x^3 + x^5 + x^6 + x^7 + x^12 + x^16 + x^17 + x^18 + x^19, the degree-19
# modulus usually quoted for this hash. It has x^2 + x + 1 as a factor, so
# configuration rejects it; it remains useful for exercising mul_x.
QUOTED_POLY_19 = (
    1 | 1 << 2 | 1 << 3 | 1 << 5 | 1 << 6 | 1 << 7 | 1 << 12 | 1 << 16 | 1 << 17 | 1 << 18 | 1 << 19
)
# x^8 + x^4 + x^3 + x^2 + 1
TEST_POLY_8 = 0x11D

TRIAL_DIVISION_MAX_DEGREE = 32


def degree(poly: int) -> int:
    return poly.bit_length() - 1


def rotate_left(value: int, shift: int, width: int) -> int:
    """Multiply by x^shift modulo x^width + 1."""
    shift %= width
    if not shift:
        return value
    mask = (1 << width) - 1
    return ((value << shift) | (value >> (width - shift))) & mask


def mul_x(value: int, poly: int) -> int:
    """Multiply a reduced polynomial by x modulo poly."""
    value <<= 1
    if value >> degree(poly) & 1:
        value ^= poly
    return value


def poly_mod(a: int, m: int) -> int:
    dm = degree(m)
    da = degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = degree(a)
    return a


def poly_mulmod(a: int, b: int, poly: int) -> int:
    """Carry-less product a*b reduced modulo poly; a and b must be reduced."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a = mul_x(a, poly)
    return result


def x_power_mod(exponent: int, poly: int) -> int:
    """x^exponent modulo poly by square-and-multiply."""
    result = 1
    base = poly_mod(0b10, poly)
    while exponent:
        if exponent & 1:
            result = poly_mulmod(result, base, poly)
        base = poly_mulmod(base, base, poly)
        exponent >>= 1
    return result


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    factors = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            factors.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        factors.append(n)
    return factors


def _is_irreducible_by_trial_division(poly: int) -> bool:
    d = degree(poly)
    # every polynomial of degree 1 .. floor(d/2)
    for divisor in range(2, 1 << (d // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True


def _is_irreducible_rabin(poly: int) -> bool:
    d = degree(poly)
    x = 0b10
    # x^(2^k) mod poly by k successive squarings
    def frobenius(k: int) -> int:
        value = poly_mod(x, poly)
        for _ in range(k):
            value = poly_mulmod(value, value, poly)
        return value

    if frobenius(d) != poly_mod(x, poly):
        return False
    for q in _prime_factors(d):
        if poly_gcd(frobenius(d // q) ^ poly_mod(x, poly), poly) != 1:
            return False
    return True


@lru_cache(maxsize=256)
def is_irreducible(poly: int) -> bool:
    """Exhaustive trial division up to degree 32, Rabin's test beyond."""
    d = degree(poly)
    if d < 1:
        return False
    if d <= TRIAL_DIVISION_MAX_DEGREE:
        return _is_irreducible_by_trial_division(poly)
    return _is_irreducible_rabin(poly)


@lru_cache(maxsize=None)
def find_irreducible(width: int) -> int:
    """Smallest irreducible polynomial of the given degree (constant term set)."""
    if not 1 <= width <= TRIAL_DIVISION_MAX_DEGREE:
        raise ConfigurationError(
            f"no built-in irreducible polynomial search for L={width}; supply one with --poly"
        )
    for tail in range(1, 1 << width, 2):
        candidate = (1 << width) | tail
        if is_irreducible(candidate):
            logger.debug("Using irreducible polynomial %#x for L=%d", candidate, width)
            return candidate
    raise ConfigurationError(f"no irreducible polynomial of degree {width}")


def default_polynomial(width: int) -> int:
    """Modulus used by the general family when none is supplied."""
    return find_irreducible(width)
