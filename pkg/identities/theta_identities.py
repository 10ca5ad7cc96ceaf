"""
This module contains functional identities between third derivatives of f and theta_1.

All identities take arguments off the lattice Z + tau Z and return the complex
residual of the identity, so a value near zero means the identity holds.
"""

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Literal, Sequence, Tuple

import numpy as np

from models.data_models import DEFAULT_SERIES, SeriesParams
from models.errors import DomainError, LatticePointError
from root_systems.build import build
from special_functions.modular import eisenstein, eta_log_derivative
from special_functions.theta import theta1_ratios, theta1_third_ratio
from special_functions.trilog import lattice_distance, third_derivatives

# arguments closer than this to the lattice are refused
IDENTITY_GUARD = 1e-3

RANK2_GROUPS = ("A2", "B2", "G2")

# k constants of the rank two identity, (short, long)
RANK2_K = {
    "A2": (Fraction(1), Fraction(1)),
    "B2": (Fraction(2), Fraction(1)),
    "G2": (Fraction(10), Fraction(6)),
}

Rank2Group = Literal["A2", "B2", "G2"]


def _guard(points: Sequence[complex], tau: complex):
    distance = np.asarray(lattice_distance(np.asarray(points, dtype=complex), tau))
    if np.any(distance < IDENTITY_GUARD):
        raise LatticePointError(f"an argument of {list(points)} lies within {IDENTITY_GUARD} of the lattice")


def fs_theta(a: complex, b: complex, tau: complex, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    The theta form of the Frobenius-Stickelberger identity with c = -a - b:

        sum_pairs (theta'/theta)(x)(theta'/theta)(y) + (1/2) sum theta''/theta = (1/2) theta'''(0)/theta'(0)

    Raises:
        LatticePointError: If a, b or c is a lattice point
    """
    args = [a, b, -a - b]
    _guard(args, tau)
    first, second = theta1_ratios(np.array(args, dtype=complex), tau, params)
    pairs = first[0] * first[1] + first[1] * first[2] + first[2] * first[0]
    return complex(pairs + 0.5 * np.sum(second) - 0.5 * theta1_third_ratio(tau, params))


def fs_f_form(a: complex, b: complex, tau: complex, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """The same identity written with f: sum_pairs f30 f30 - sum f21 over a, b, c = -a - b."""
    args = [a, b, -a - b]
    _guard(args, tau)
    f30, f21, _, _ = third_derivatives(np.array(args, dtype=complex), tau, params)
    return complex(f30[0] * f30[1] + f30[1] * f30[2] + f30[2] * f30[0] - np.sum(f21))


@lru_cache(maxsize=None)
def _rank2_data(group: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positive roots as rows acting on intrinsic z, their Gram matrix and their k constants."""
    system = build("A" if group == "A2" else group, 2)
    positive = system.positive_roots()
    form = system.form
    basis = system.basis
    lowered = np.array([[float(form.pair(r, e)) for e in basis] for r in positive])
    gram = np.array([[float(form.pair(r, s)) for s in positive] for r in positive])
    norms = [form.norm(r) for r in positive]
    short, long = min(norms), max(norms)
    k_short, k_long = RANK2_K[group]
    ks = np.array([float(k_short if norm == short and short != long else k_long) for norm in norms])
    return lowered, gram, ks


def rank2_identity(group: Rank2Group, z: Sequence[complex], tau: complex,
                   params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    sum over unordered pairs of positive roots (alpha, beta) f30(z_alpha) f30(z_beta) + sum k_alpha f21(z_alpha).

    Args:
        group: A2, B2 or G2 in the standard normalization
        z: Intrinsic coordinates of the point, length 2
        tau: Point of the upper half plane
        params: Truncation policy

    Raises:
        DomainError: For an unknown group or a z of the wrong length
        LatticePointError: If some pairing is a lattice point
    """
    if group not in RANK2_GROUPS:
        raise DomainError(f"rank two identity is stated for {', '.join(RANK2_GROUPS)}, got {group!r}")
    if len(z) != 2:
        raise DomainError(f"z must have two coordinates, got {len(z)}")
    lowered, gram, ks = _rank2_data(group)
    pairings = lowered @ np.asarray(z, dtype=complex)
    _guard(pairings, tau)
    f30, f21, _, _ = third_derivatives(pairings, tau, params)
    quadratic = sum(gram[i, j] * f30[i] * f30[j] for i, j in combinations(range(len(pairings)), 2))
    return complex(quadratic + np.sum(ks * f21))


def a2_identity(which: int, x: complex, y: complex, tau: complex, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """
    One of two further A2 identities in f at x, y and x + y.

    Identity 1 is linear in f12; identity 2 involves f03(x + y) and equals -E_4/108,
    which is moved to the left so the residual is returned for both.

    Raises:
        DomainError: If which is not 1 or 2
        LatticePointError: If x, y or x + y is a lattice point
    """
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which}")
    args = [x, y, x + y]
    _guard(args, tau)
    (a30, b30, s30), (a21, b21, s21), (a12, b12, s12), (_, _, s03) = third_derivatives(
        np.array(args, dtype=complex), tau, params)
    if which == 1:
        return complex(s30 * (a21 - b21) + b30 * (s21 - a21) + a12 - 0.5 * b12 + 0.5 * s12)
    first = (a30 * (s12 - b12) + b30 * (s12 - a12) - 2 / 3 * s30 * (a12 + b12))
    second = 2 / 3 * s21 * a21 + 2 / 3 * s21 * b21 - 8 / 3 * a21 * b21
    return complex(first + second + 10 / 9 * s03 + eisenstein(4, tau, params) / 108)


def theta_ratio_crosscheck(tau: complex, params: SeriesParams = DEFAULT_SERIES) -> complex:
    """theta'''(0)/theta'(0) from the theta series minus 12 pi i eta'/eta."""
    return theta1_third_ratio(tau, params) - 12j * math.pi * eta_log_derivative(tau, params)
