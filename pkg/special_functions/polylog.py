"""
This module contains the polylogarithm Li_n on the principal branch.
"""

import cmath
import math

import mpmath

from models.data_models import DEFAULT_SERIES, SeriesParams
from models.errors import DomainError
from special_functions.bernoulli import bernoulli_poly
from utils.series_utils import sum_series

# radius below which the defining power series is summed directly
DIRECT_RADIUS = 0.75

ZETA3 = float(mpmath.zeta(3))


def _direct(n: int, z: complex, params: SeriesParams) -> complex:
    terms = (z**k / k**n for k in range(1, params.max_terms + 1))
    return complex(sum_series(terms, f"Li_{n}", params))


def polylog(n: int, z: complex, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    Evaluate Li_n(z) on the principal branch.

    Inside the disc |z| < 0.75 the power series sum z^k / k^n is summed
    directly. On the rest of the closed unit disc mpmath is used. Outside
    the unit disc the value is continued with the inversion formula
    against Li_n(1/z).

    Args:
        n: Positive order
        z: Argument
        params: Truncation policy for the direct series

    Returns:
        Li_n(z)

    Raises:
        DomainError: For Li_1(1), or for z on the branch cut z > 1
    """
    if n < 1:
        raise DomainError(f"polylog order must be positive, got {n}")
    z = complex(z)
    if n == 1 and z == 1:
        raise DomainError("Li_1 diverges at z = 1")
    radius = abs(z)
    if radius < DIRECT_RADIUS:
        return _direct(n, z, params)
    if radius <= 1.0:
        return complex(mpmath.polylog(n, mpmath.mpc(z.real, z.imag)))
    if z.imag == 0 and z.real > 1:
        raise DomainError(f"Li_{n}({z.real}) lies on the branch cut")
    return inversion_value(n, z) - (-1) ** n * polylog(n, 1 / z, params)


def inversion_value(n: int, z: complex) -> complex:
    """
    Right-hand side of the inversion formula,
    Li_n(z) + (-1)^n Li_n(1/z) = -(2 pi i)^n / n! * B_n(1/2 + log(-z) / (2 pi i)),
    valid for z off the segment [0, 1].
    """
    if z == 0 or (z.imag == 0 and 0 < z.real <= 1):
        raise DomainError(f"inversion formula does not apply at z = {z}")
    x = 0.5 + cmath.log(-z) / (2j * math.pi)
    return -((2j * math.pi) ** n) / math.factorial(n) * complex(bernoulli_poly(n, x))


def zeta3() -> float:
    """Li_3(1) = zeta(3)."""
    return ZETA3
