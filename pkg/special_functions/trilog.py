"""
This module contains the normalized elliptic trilogarithm f(z, tau) and its
third partial derivatives f^(m,n) = d_z^m d_tau^n f, m + n = 3.

With w = exp(2 pi i z) and x = q^r the derivatives are the q-series

    f^(3,0) = w/(1-w) + 1/2 + 2i sum_r x/(1-x) sin(2 pi r z)
    f^(2,1) = -1/12 + 2 sum_r x/(1-x)^2 cos(2 pi r z)
    f^(1,2) = 2i sum_r x(1+x)/(1-x)^3 sin(2 pi r z)
    f^(0,3) = -4 sum_r x(1+4x+x^2)/(1-x)^4 sin^2(pi r z)

which converge for |Im z| < Im tau. They are single valued: the branch
ambiguity of f sits in its quadratic terms only.
"""

import cmath
import itertools
import logging
import math
from typing import Tuple, Union

import numpy as np

from models.data_models import DEFAULT_SERIES, EllipticArg, SeriesParams
from models.errors import ConvergenceStripError, DomainError, LatticePointError
from special_functions.bernoulli import bernoulli
from special_functions.modular import TauLike, coerce_tau, eisenstein, nome
from special_functions.polylog import polylog, zeta3
from utils.series_utils import ComplexArray, sum_series

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * math.pi

# index of f^(m, 3-m) in the array returned by third_derivatives
DERIVATIVE_INDEX = {(3, 0): 0, (2, 1): 1, (1, 2): 2, (0, 3): 3}

# distance to the lattice below which z counts as a lattice point
LATTICE_EPS = 1e-12

# E_2n beyond this n has divisor sums too large for a float
MAX_LAURENT_ORDER = 50

IntArray = Union[int, np.ndarray]


def lattice_distance(z: ComplexArray, tau: TauLike) -> ComplexArray:
    """Distance from z to the nearest point of Z + tau Z."""
    tau = coerce_tau(tau)
    z = np.asarray(z, dtype=complex)
    n = np.rint(z.imag / tau.imag)
    shifted = z - n * tau
    best = np.full(z.shape, np.inf)
    for dn in (-1, 0, 1):
        candidate = shifted - dn * tau
        best = np.minimum(best, np.abs(candidate - np.rint(candidate.real)))
    return float(best) if best.ndim == 0 else best


def reduce_to_strip(z: ComplexArray, tau: TauLike) -> Tuple[ComplexArray, IntArray, IntArray]:
    """
    Write z = z_reduced + n tau + m with |Im z_reduced| <= Im tau / 2 and |Re z_reduced| <= 1/2.

    Args:
        z: Scalar or array
        tau: Point of the upper half plane

    Returns:
        (z_reduced, n, m)
    """
    tau = coerce_tau(tau)
    z_arr = np.asarray(z, dtype=complex)
    n = np.rint(z_arr.imag / tau.imag)
    shifted = z_arr - n * tau
    m = np.rint(shifted.real)
    reduced = shifted - m
    if z_arr.ndim == 0:
        if n != 0:
            logger.debug("reduced z=%s by %d tau", z, int(n))
        return complex(reduced), int(n), int(m)
    return reduced, n.astype(int), m.astype(int)


def shift_third_derivatives(values: np.ndarray, n: IntArray) -> np.ndarray:
    """
    Third derivatives at z + n tau from those at z.

    Args:
        values: Array whose first axis holds f^(3,0), f^(2,1), f^(1,2), f^(0,3)
        n: Integer shift, scalar or broadcastable against values[0]

    Returns:
        The shifted values, same layout
    """
    f30, f21, f12, f03 = values
    n = np.asarray(n, dtype=float)
    return np.stack([
        f30 + n,
        f21 - n * f30 - n**2 / 2,
        f12 - 2 * n * f21 + n**2 * f30 + n**3 / 3,
        f03 - 3 * n * f12 + 3 * n**2 * f21 - n**3 * f30 - n**4 / 4,
    ])


def shift_correction(z: complex, tau: TauLike, n: int) -> complex:
    """Quartic polynomial P with f(z + n tau) = f(z) + P up to quadratic terms."""
    tau = coerce_tau(tau)
    return (4 * n * z**3 + 6 * n**2 * tau * z**2 + 4 * n**3 * tau**2 * z + n**4 * tau**3) / 24


def _q_sums(z: np.ndarray, tau: complex, params: SeriesParams) -> np.ndarray:
    q = nome(tau)

    def terms():
        for r in range(1, params.max_terms + 1):
            x = q**r
            s = np.sin(2 * math.pi * r * z)
            c = np.cos(2 * math.pi * r * z)
            half = np.sin(math.pi * r * z)
            yield np.stack([
                2j * x / (1 - x) * s,
                2 * x / (1 - x) ** 2 * c,
                2j * x * (1 + x) / (1 - x) ** 3 * s,
                -4 * x * (1 + 4 * x + x**2) / (1 - x) ** 4 * half**2,
            ])

    return sum_series(terms(), "third derivatives of f", params)


def third_derivatives(z: ComplexArray, tau: TauLike, params: SeriesParams = DEFAULT_SERIES,
                      reduce: bool = True) -> np.ndarray:
    """
    All four third derivatives of f at z, vectorised over z.

    Args:
        z: Scalar or array of arguments
        tau: Point of the upper half plane
        params: Truncation policy
        reduce: Reduce z into the strip first and apply the shift laws;
            if False, z must already satisfy |Im z| < Im tau

    Returns:
        Array of shape (4,) + shape(z) in the order f^(3,0), f^(2,1), f^(1,2), f^(0,3)

    Raises:
        ConvergenceStripError: If reduce is False and z is outside the strip
        LatticePointError: If some z is a lattice point (pole of f^(3,0))
    """
    tau = coerce_tau(tau)
    z = np.asarray(z, dtype=complex)
    if reduce:
        z_red, n, _ = reduce_to_strip(z, tau)
        z_red = np.asarray(z_red)
    else:
        if np.any(np.abs(z.imag) >= tau.imag):
            raise ConvergenceStripError(f"|Im z| must be below Im tau = {tau.imag}")
        z_red, n = z, 0
    if np.any(np.asarray(lattice_distance(z_red, tau)) < LATTICE_EPS):
        raise LatticePointError("f^(3,0) has a pole at lattice points")
    w = np.exp(TWO_PI_I * z_red)
    sums = _q_sums(z_red, tau, params)
    values = np.stack([
        w / (1 - w) + 0.5 + sums[0],
        -1 / 12 + sums[1],
        sums[2],
        sums[3],
    ])
    if reduce:
        values = shift_third_derivatives(values, n)
    return values


def f_third(m: int, n: int, arg: EllipticArg, params: SeriesParams = DEFAULT_SERIES,
            reduce: bool = False) -> complex:
    """
    The third partial derivative f^(m,n)(z, tau) with m + n = 3.

    Args:
        m: Order in z
        n: Order in tau
        arg: The point (z, tau)
        params: Truncation policy
        reduce: Serve points outside the strip through the shift laws

    Returns:
        f^(m,n)(z, tau)

    Raises:
        DomainError: If (m, n) is not a third-order pair
        ConvergenceStripError: Outside the strip with reduce False
        LatticePointError: At a lattice point when m = 3
    """
    if (m, n) not in DERIVATIVE_INDEX:
        raise DomainError(f"(m, n) must be non-negative with m + n = 3, got ({m}, {n})")
    tau = arg.tau.tau
    z = arg.z
    if m == 3 or lattice_distance(z, tau) >= LATTICE_EPS:
        return complex(third_derivatives(z, tau, params, reduce)[DERIVATIVE_INDEX[(m, n)]])
    # at a lattice point only the unshifted derivatives without the pole are finite
    if reduce:
        z_red, shift, _ = reduce_to_strip(z, tau)
    else:
        if abs(z.imag) >= tau.imag:
            raise ConvergenceStripError(f"|Im z| must be below Im tau = {tau.imag}")
        z_red, shift = z, 0
    if shift:
        raise LatticePointError(f"f^({m},{n}) has a pole at z = {z}")
    sums = _q_sums(np.asarray(z_red, dtype=complex), tau, params)
    values = {(2, 1): -1 / 12 + sums[1], (1, 2): sums[2], (0, 3): sums[3]}
    return complex(values[(m, n)])


def f_value(arg: EllipticArg, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    The normalized elliptic trilogarithm f(z, tau) from its defining sum.

    f = (2 pi i)^-3 [Li_3(w) - zeta(3) + sum_{n>=1} (Li_3(q^n w) + Li_3(q^n / w) - 2 Li_3(q^n))]
        + z^3/12 - z^2 tau/24

    where the last two terms are the Bernoulli correction of the regularized sum
    minus its value at w = 1. Every Li_3 is taken on its principal branch, so
    the value is branch dependent in its quadratic terms.

    Args:
        arg: The point (z, tau), with |Im z| < Im tau
        params: Truncation policy

    Returns:
        f(z, tau)

    Raises:
        ConvergenceStripError: Outside the strip
    """
    tau = arg.tau.tau
    z = arg.z
    if abs(z.imag) >= tau.imag:
        raise ConvergenceStripError(f"|Im z| must be below Im tau = {tau.imag}")
    q = nome(tau)
    w = cmath.exp(TWO_PI_I * z)
    terms = (
        polylog(3, q**n * w, params) + polylog(3, q**n / w, params) - 2 * polylog(3, q**n, params)
        for n in range(1, params.max_terms + 1)
    )
    body = polylog(3, w, params) - zeta3() + sum_series(terms, "f", params)
    return complex(body / TWO_PI_I**3 + z**3 / 12 - z**2 * tau / 24)


def f_value_series(arg: EllipticArg, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    f(z, tau) from the single resummed series

    (2 pi i)^-3 [Li_3(w) - zeta(3)] + z^3/12 - z^2 tau/24
        - 4 (2 pi i)^-3 sum_r q^r/(1-q^r) sin^2(pi r z) / r^3.
    """
    tau = arg.tau.tau
    z = arg.z
    if abs(z.imag) >= tau.imag:
        raise ConvergenceStripError(f"|Im z| must be below Im tau = {tau.imag}")
    q = nome(tau)
    terms = (q**r / (1 - q**r) * cmath.sin(math.pi * r * z) ** 2 / r**3 for r in range(1, params.max_terms + 1))
    lattice_part = -4 * sum_series(terms, "f series", params)
    body = polylog(3, cmath.exp(TWO_PI_I * z), params) - zeta3() + lattice_part
    return complex(body / TWO_PI_I**3 + z**3 / 12 - z**2 * tau / 24)


def li3_one_tau3(tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    Third tau-derivative of (2 pi i)^-3 Li_3(1, q), 1/120 + 2 sum_r x(1+4x+x^2)/(1-x)^4 with x = q^r.

    Equals E_4(tau)/120.
    """
    q = nome(tau)
    powers = (q**r for r in range(1, params.max_terms + 1))
    terms = (x * (1 + 4 * x + x**2) / (1 - x) ** 4 for x in powers)
    return 1 / 120 + 2 * complex(sum_series(terms, "Li3(1, q)'''", params))


def f30_small_z(z: complex, tau: TauLike, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    Laurent expansion of f^(3,0) about z = 0,

    -1/(2 pi i z) + (2 pi i)^-3 sum_{n>=1} (-1)^n E_2n B_2n (2 pi)^(2n+2) z^(2n-1) / ((2n-1)! 2n).

    Converges for |z| below the distance to the nearest nonzero lattice point.

    Raises:
        LatticePointError: At z = 0
        SeriesTruncationError: If MAX_LAURENT_ORDER terms do not settle the sum
    """
    tau = coerce_tau(tau)
    if z == 0:
        raise LatticePointError("f^(3,0) has a pole at z = 0")

    def terms():
        for n in itertools.count(1):
            k = 2 * n
            coefficient = (-1) ** n * float(bernoulli(k)) * (2 * math.pi) ** (k + 2) / (math.factorial(k - 1) * k)
            yield coefficient * eisenstein(k, tau, params) * z ** (k - 1)

    capped = params.model_copy(update={"max_terms": min(params.max_terms, MAX_LAURENT_ORDER)})
    return -1 / (TWO_PI_I * z) + complex(sum_series(terms(), "f30 Laurent", capped)) / TWO_PI_I**3
