"""
This module contains the Jacobi theta function theta_1 and its derivatives.

theta_1(z, tau) = 2 sum_{n>=0} (-1)^n exp(pi i tau (n + 1/2)^2) sin((2n + 1) pi z),
equal to the product 2 q^(1/8) sin(pi z) prod (1 - q^n)(1 - q^n w)(1 - q^n / w)
with w = exp(2 pi i z). It is odd in z, theta_1(z + 1) = -theta_1(z) and it
satisfies the heat equation d_z^2 theta_1 = 4 pi i d_tau theta_1.
"""

import math
from typing import Tuple

import numpy as np

from models.data_models import DEFAULT_SERIES, SeriesParams
from models.errors import LatticePointError
from special_functions.modular import TauLike, coerce_tau
from utils.series_utils import ComplexArray, sum_series

# jet layout: value, d_z, d_z^2, d_z^3, d_tau
JET_SIZE = 5


def theta1_jet(z: ComplexArray, tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> np.ndarray:
    """
    theta_1 and its derivatives from one pass over the series.

    Args:
        z: Argument, scalar or numpy array
        tau: Point of the upper half plane
        params: Truncation policy

    Returns:
        Array of shape (5,) + shape(z) holding theta_1, d_z, d_z^2, d_z^3 and d_tau
    """
    tau = coerce_tau(tau)
    z = np.asarray(z, dtype=complex)

    def terms():
        for n in range(params.max_terms):
            half = n + 0.5
            amplitude = 2 * (-1) ** n * np.exp(1j * math.pi * tau * half**2)
            k = (2 * n + 1) * math.pi
            s = np.sin(k * z)
            c = np.cos(k * z)
            yield amplitude * np.stack([
                s,
                k * c,
                -k**2 * s,
                -k**3 * c,
                1j * math.pi * half**2 * s,
            ])

    return sum_series(terms(), "theta1", params)


def theta1(z: ComplexArray, tau: TauLike, derivative: int = 0,
           params: SeriesParams = DEFAULT_SERIES) -> ComplexArray:
    """theta_1 or one of its first three z-derivatives."""
    jet = theta1_jet(z, tau, params)
    return _unwrap(jet[derivative])


def theta1_dtau(z: ComplexArray, tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> ComplexArray:
    return _unwrap(theta1_jet(z, tau, params)[4])


def theta1_log_derivatives(z: ComplexArray, tau: TauLike,
                           params: SeriesParams = DEFAULT_SERIES) -> Tuple[ComplexArray, ComplexArray]:
    """
    rho = theta_1'/theta_1 and its z-derivative rho' = theta_1''/theta_1 - rho^2.

    Raises:
        LatticePointError: If theta_1 vanishes at some z (a lattice point)
    """
    jet = theta1_jet(z, tau, params)
    value = jet[0]
    if np.any(value == 0):
        raise LatticePointError("theta_1 vanishes at a lattice point")
    rho = jet[1] / value
    rho_prime = jet[2] / value - rho**2
    return _unwrap(rho), _unwrap(rho_prime)


def theta1_ratios(z: ComplexArray, tau: TauLike,
                  params: SeriesParams = DEFAULT_SERIES) -> Tuple[ComplexArray, ComplexArray]:
    """theta_1'/theta_1 and theta_1''/theta_1."""
    jet = theta1_jet(z, tau, params)
    if np.any(jet[0] == 0):
        raise LatticePointError("theta_1 vanishes at a lattice point")
    return _unwrap(jet[1] / jet[0]), _unwrap(jet[2] / jet[0])


def theta1_prime_zero(tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """theta_1'(0, tau) = 2 pi eta(tau)^3."""
    return complex(theta1_jet(0.0, tau, params)[1])


def theta1_third_ratio(tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """theta_1'''(0)/theta_1'(0), from the differentiated series."""
    jet = theta1_jet(0.0, tau, params)
    return complex(jet[3] / jet[1])


def _unwrap(value: np.ndarray) -> ComplexArray:
    return complex(value) if np.ndim(value) == 0 else value
