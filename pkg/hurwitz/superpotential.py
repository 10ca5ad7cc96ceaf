"""
This module contains the A_N and B_N superpotentials, maps from the torus to the sphere.

    A_N: lambda(v) = exp(2 pi i u) prod_{i=0}^{N} theta_1(v - z_i) / theta_1(v)^(N+1),  sum z_i = 0
    B_N: lambda(v) = exp(2 pi i u) prod_{i=1}^{N} theta_1(v - z_i) theta_1(v + z_i) / theta_1(v)^(2N)

Moduli are (u, z_1, ..., z_N, tau). For A_N the z are the first N of the N+1
zero-sum coordinates, the last one being minus their sum.
"""

import cmath
import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence, Tuple

import numpy as np

from models.data_models import DEFAULT_SERIES, ModularParameter, SeriesParams
from models.errors import DomainError, LatticePointError
from special_functions.theta import theta1, theta1_log_derivatives
from special_functions.trilog import lattice_distance
from utils.series_utils import richardson_derivative

Family = Literal["A", "B"]

# step of the moduli finite differences
MODULI_STEP = 1e-5


@dataclass(frozen=True)
class Superpotential:
    family: Family
    rank: int
    u: complex
    z: Tuple[complex, ...]
    tau: ModularParameter
    params: SeriesParams = DEFAULT_SERIES

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise DomainError(f"superpotentials are defined for A and B, got {self.family!r}")
        if self.rank < 1:
            raise DomainError(f"rank must be positive, got {self.rank}")
        if len(self.z) != self.rank:
            raise DomainError(f"{self.family}{self.rank} needs {self.rank} coordinates, got {len(self.z)}")

    @classmethod
    def of(cls, family: Family, u: complex, z: Sequence[complex], tau: complex,
           params: SeriesParams = DEFAULT_SERIES) -> "Superpotential":
        return cls(family, len(z), complex(u), tuple(complex(c) for c in z), ModularParameter(tau=tau), params)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def degree(self) -> int:
        """Order of the single pole at v = 0."""
        return self.rank + 1 if self.family == "A" else 2 * self.rank

    @property
    def expected_critical_points(self) -> int:
        # Riemann-Hurwitz on a torus with one pole: 2g + l + degree - 2
        return self.degree + 1

    def zeros(self) -> np.ndarray:
        """The points where the numerator vanishes."""
        z = np.array(self.z, dtype=complex)
        if self.family == "A":
            return np.append(z, -np.sum(z))
        return np.concatenate([z, -z])

    def moduli_vector(self) -> np.ndarray:
        return np.concatenate([[self.u], np.array(self.z, dtype=complex), [self.tau.tau]])

    def with_moduli(self, moduli: Sequence[complex]) -> "Superpotential":
        moduli = np.asarray(moduli, dtype=complex)
        return replace(self, u=complex(moduli[0]), z=tuple(complex(c) for c in moduli[1:-1]),
                       tau=ModularParameter(tau=complex(moduli[-1])))


def _check_pole(sp: Superpotential, v):
    if np.any(np.asarray(lattice_distance(v, sp.tau.tau)) == 0):
        raise LatticePointError(f"lambda has a pole at the lattice point v = {v}")


def lambda_eval(sp: Superpotential, v: complex) -> complex:
    """
    lambda(v) for the superpotential.

    Raises:
        LatticePointError: At a pole v in Z + tau Z
    """
    _check_pole(sp, v)
    tau = sp.tau.tau
    numerator = np.prod(theta1(v - sp.zeros(), tau, params=sp.params))
    return complex(cmath.exp(2j * math.pi * sp.u) * numerator / theta1(v, tau, params=sp.params) ** sp.degree)


def dlog_lambda(sp: Superpotential, v, order: int = 1):
    """
    The first or second v-derivative of log lambda, vectorised over v.

    Sums of theta_1'/theta_1 and its derivative over the zeros, minus the pole term.

    Raises:
        DomainError: If order is not 1 or 2
        LatticePointError: At a pole or zero of lambda
    """
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    v = np.asarray(v, dtype=complex)
    tau = sp.tau.tau
    zeros = sp.zeros()
    shifted = v[..., np.newaxis] - zeros
    rho, rho_prime = theta1_log_derivatives(shifted, tau, sp.params)
    pole_rho, pole_rho_prime = theta1_log_derivatives(v, tau, sp.params)
    if order == 1:
        value = np.sum(rho, axis=-1) - sp.degree * pole_rho
    else:
        value = np.sum(rho_prime, axis=-1) - sp.degree * pole_rho_prime
    return complex(value) if np.ndim(value) == 0 else value


def moduli_log_derivative(sp: Superpotential, v: complex, index: int, step: float = MODULI_STEP) -> complex:
    """
    d log lambda / d m_index at fixed v, m = (u, z, tau), by Richardson refined central differences.
    """
    base = sp.moduli_vector()
    unit = np.zeros(len(base), dtype=complex)
    unit[index] = 1

    def along(h: float) -> complex:
        return lambda_eval(sp.with_moduli(base + h * unit), v)

    return richardson_derivative(along, step) / lambda_eval(sp, v)


def u_log_derivative(sp: Superpotential) -> complex:
    """The exact d log lambda / du, used to cross-check the finite differences."""
    return 2j * math.pi
