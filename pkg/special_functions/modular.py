"""
This module contains the Dedekind eta function and the Eisenstein series.
"""

import cmath
import math
from functools import lru_cache
from typing import Union

from models.data_models import DEFAULT_SERIES, ModularParameter, SeriesParams
from models.errors import DomainError
from special_functions.bernoulli import bernoulli
from utils.series_utils import sum_series

TauLike = Union[complex, ModularParameter]


def coerce_tau(tau: TauLike) -> complex:
    """
    Return tau as a complex number, checking it lies in the upper half plane.

    Raises:
        DomainError: If Im(tau) <= 0
    """
    if isinstance(tau, ModularParameter):
        return tau.tau
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"tau must have positive imaginary part, got {tau}")
    return tau


def nome(tau: TauLike) -> complex:
    """q = exp(2 pi i tau)."""
    return cmath.exp(2j * math.pi * coerce_tau(tau))


@lru_cache(maxsize=4096)
def divisor_sigma(power: int, n: int) -> int:
    """Sum of d**power over the positive divisors d of n."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**power
            if d * d != n:
                total += (n // d) ** power
        d += 1
    return total


def dedekind_eta(tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    Dedekind eta q^(1/24) prod_{n>=1} (1 - q^n), with q^(1/24) = exp(pi i tau / 12).

    The product is summed as a series of logarithms.
    """
    tau = coerce_tau(tau)
    q = nome(tau)
    logs = (cmath.log(1 - q**n) for n in range(1, params.max_terms + 1))
    return cmath.exp(1j * math.pi * tau / 12 + sum_series(logs, "eta", params))


def eta_log_derivative(tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    d/dtau log eta = 2 pi i (1/24 - sum_{n>=1} n q^n / (1 - q^n)).

    Computed from the Lambert series of the product, independently of eisenstein().
    """
    q = nome(tau)
    terms = (n * q**n / (1 - q**n) for n in range(1, params.max_terms + 1))
    return 2j * math.pi * (1 / 24 - sum_series(terms, "eta'/eta", params))


def eisenstein(k: int, tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    Normalized Eisenstein series E_k = 1 - (2k / B_k) sum_{n>=1} sigma_{k-1}(n) q^n.

    Args:
        k: Even weight, at least 2
        tau: Point of the upper half plane
        params: Truncation policy

    Returns:
        E_k(tau)

    Raises:
        DomainError: If k is odd or smaller than 2, or if a divisor sum of
            the q-expansion no longer fits in a float
    """
    if k < 2 or k % 2:
        raise DomainError(f"Eisenstein weight must be even and >= 2, got {k}")
    q = nome(tau)
    coefficient = float(-2 * k / bernoulli(k))
    # terms grow like n^(k-1) |q|^n up to this index; sum those exactly first
    decay = -math.log(abs(q))
    peak = max(1, math.ceil((k - 1) / decay))
    try:
        head = sum(divisor_sigma(k - 1, n) * q**n for n in range(1, peak + 1))
        tail = (divisor_sigma(k - 1, n) * q**n for n in range(peak + 1, peak + params.max_terms + 1))
        total = head + sum_series(tail, f"E_{k}", params)
    except OverflowError as exc:
        raise DomainError(f"E_{k} at tau = {tau} exceeds double precision") from exc
    return 1 + coefficient * total
