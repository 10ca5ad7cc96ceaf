"""
This module contains Bernoulli numbers and Bernoulli polynomials.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Union

from models.errors import DomainError

Number = Union[int, Fraction, complex]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """
    The Bernoulli number B_n from the generating function x/(e^x - 1).

    Uses the recurrence sum_{k<=n} C(n+1, k) B_k = 0, so B_1 = -1/2.

    Args:
        n: Non-negative index

    Returns:
        B_n as an exact rational
    """
    if n < 0:
        raise DomainError(f"Bernoulli index must be non-negative, got {n}")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    total = sum((comb(n + 1, k) * bernoulli(k) for k in range(n)), Fraction(0))
    return -total / (n + 1)


def bernoulli_poly(n: int, z: Number) -> Number:
    """
    The Bernoulli polynomial B_n(z) = sum_k C(n, k) B_k z^(n-k).

    Exact when z is rational, complex otherwise.
    """
    if n < 0:
        raise DomainError(f"Bernoulli index must be non-negative, got {n}")
    return sum(comb(n, k) * bernoulli(k) * z ** (n - k) for k in range(n + 1))
