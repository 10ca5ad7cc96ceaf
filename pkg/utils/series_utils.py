"""
This module contains utilities for truncated series and finite differences.
"""

import logging
import math
from typing import Callable, Iterable, Union

import numpy as np

from models.data_models import DEFAULT_SERIES, SeriesParams
from models.errors import SeriesTruncationError

logger = logging.getLogger(__name__)

ComplexArray = Union[complex, np.ndarray]

# consecutive small terms required before stopping
QUIET_TERMS = 3


def sum_series(terms: Iterable[ComplexArray], name: str, params: SeriesParams = DEFAULT_SERIES) -> ComplexArray:
    """
    Sum a series term by term under the truncation policy.

    Summation stops once QUIET_TERMS consecutive terms have magnitude below
    target_tol * (1 + running maximum magnitude of the partial sums). Terms may
    be numpy arrays, in which case the largest entry decides.

    Args:
        terms: An iterable producing the terms, first term first
        name: Name used in logs and errors
        params: Truncation policy

    Returns:
        The truncated sum

    Raises:
        SeriesTruncationError: If max_terms terms were consumed without converging
    """
    total = 0
    scale = 0.0
    quiet = 0
    magnitude = float("inf")
    for count, term in enumerate(terms, start=1):
        total = total + term
        magnitude = float(np.max(np.abs(term)))
        scale = max(scale, float(np.max(np.abs(total))))
        if magnitude <= params.target_tol * (1.0 + scale):
            quiet += 1
            if quiet >= QUIET_TERMS:
                logger.debug("%s converged after %d terms", name, count)
                return total
        else:
            quiet = 0
        if count >= params.max_terms:
            break
    else:
        # finite iterables are exact sums
        return total
    raise SeriesTruncationError(name, params.max_terms, magnitude)


def complex_stencil(func: Callable[[complex], complex], x: complex, order: int, h: float, points: int = 4) -> complex:
    """
    Derivative of an analytic function from samples on a small circle.

    Uses the discrete Cauchy formula with equally spaced points
    x + h * w**k, w = exp(2 pi i / points); the aliasing error is
    O(h**points).

    Args:
        func: Analytic function of one complex variable
        x: Centre of the stencil
        order: Derivative order, smaller than points
        h: Radius of the circle
        points: Number of samples

    Returns:
        Approximation of the order-th derivative at x
    """
    w = np.exp(2j * np.pi / points)
    total = sum(func(x + h * w**k) * w ** (-k * order) for k in range(points))
    return complex(total) * math.factorial(order) / (points * h**order)


def mixed_stencil(func: Callable[[complex, complex], complex], z: complex, tau: complex,
                  z_order: int, tau_order: int, h: float, points: int = 4) -> complex:
    """
    Mixed partial derivative d^z_order d^tau_order of an analytic function of two variables.
    """
    def along_tau(t):
        if z_order == 0:
            return func(z, t)
        return complex_stencil(lambda s: func(s, t), z, z_order, h, points)

    if tau_order == 0:
        return along_tau(tau)
    return complex_stencil(along_tau, tau, tau_order, h, points)


def central_difference(func: Callable[[float], complex], h: float) -> complex:
    return (func(h) - func(-h)) / (2 * h)


def richardson_derivative(func: Callable[[float], complex], h: float) -> complex:
    """
    First derivative at 0 from central differences at h and h/2, Richardson refined.

    Args:
        func: Function of a real step, evaluated at +-h and +-h/2
        h: Base step

    Returns:
        (4 D(h/2) - D(h)) / 3
    """
    coarse = central_difference(func, h)
    fine = central_difference(func, h / 2)
    return (4 * fine - coarse) / 3
