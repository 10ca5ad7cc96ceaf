"""
This module contains the Jacobian candidate

    Jac(u, z, tau) = exp(2 pi i h u) prod_{alpha > 0} theta_1((alpha, z), tau) / theta_1'(0, tau)

and the check of its transformation laws. Only laws and log-derivatives are
tested since Jac is fixed up to a constant.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Sequence

import numpy as np

from models.data_models import DEFAULT_HURWITZ_TOL, DEFAULT_SERIES, SeriesParams, VerificationReport
from models.errors import DomainError, LatticePointError
from root_systems.build import RootSystem, build
from special_functions.theta import theta1, theta1_prime_zero
from special_functions.trilog import lattice_distance
from utils.series_utils import richardson_derivative

logger = logging.getLogger(__name__)

JACOBIAN_GUARD = 1e-3


def dual_coxeter_number(family: str, rank: int) -> int:
    if family == "A":
        return rank + 1
    if family == "B":
        return 2 * rank - 1
    raise DomainError(f"Jacobian checks are available for A and B, got {family!r}")


@dataclass(frozen=True)
class JacobianCandidate:
    """The product formula for a root system, with z in the intrinsic coordinates of its basis."""
    family: str
    rank: int
    params: SeriesParams = DEFAULT_SERIES

    @cached_property
    def system(self) -> RootSystem:
        return build(self.family, self.rank)

    @cached_property
    def h_dual(self) -> int:
        return dual_coxeter_number(self.family, self.rank)

    @cached_property
    def gram(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.system.gram()])

    @cached_property
    def positive(self) -> np.ndarray:
        """Positive roots as rows acting on intrinsic z."""
        form, basis = self.system.form, self.system.basis
        return np.array([[float(form.pair(r, e)) for e in basis] for r in self.system.positive_roots()])

    def simple_data(self):
        """Intrinsic coordinates of the simple roots and of their coroots."""
        simple = self.system.simple_roots()
        roots = np.array([self.system.coordinates(r).as_floats() for r in simple])
        coroots = np.array([self.system.coordinates(self.system.coroot(r)).as_floats() for r in simple])
        return roots, coroots

    def value(self, u: complex, z: Sequence[complex], tau: complex) -> complex:
        pairings = self.positive @ np.asarray(z, dtype=complex)
        if np.any(np.asarray(lattice_distance(pairings, tau)) < JACOBIAN_GUARD):
            raise LatticePointError(f"a root pairing of z = {list(z)} is on the lattice")
        ratios = theta1(pairings, tau, params=self.params) / theta1_prime_zero(tau, self.params)
        return complex(cmath.exp(2j * math.pi * self.h_dual * u) * np.prod(ratios))

    def pair(self, x: np.ndarray, y: np.ndarray) -> complex:
        return complex(x @ self.gram @ y)


def _relative(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / abs(rhs) if rhs else abs(lhs)


def jacobian_transform_check(family: str, rank: int, u: complex, z: Sequence[complex], tau: complex,
                             tol: float = DEFAULT_HURWITZ_TOL,
                             params: SeriesParams = DEFAULT_SERIES) -> VerificationReport:
    """
    Check the transformation laws of the Jacobian candidate at (u, z, tau).

    Lattice shifts use the coroot of the first simple root and the reflection is
    the first simple reflection. The quasi-periodicity factor is evaluated both
    with and without the tau in the (q, q) term; the variant with tau decides.

    Raises:
        DomainError: For a family other than A and B
        LatticePointError: If some root pairing is on the lattice
    """
    jac = JacobianCandidate(family, rank, params)
    z = np.asarray(z, dtype=complex)
    h = jac.h_dual
    base = jac.value(u, z, tau)
    roots, coroots = jac.simple_data()
    q, alpha = coroots[0], roots[0]
    count = len(jac.positive)

    du = richardson_derivative(lambda s: jac.value(u + s, z, tau), 1e-5) / base
    reflected = z - jac.pair(alpha, z) * coroots[0]
    qz, qq, zz = jac.pair(q, z), jac.pair(q, q), jac.pair(z, z)

    with_tau = cmath.exp(-2j * math.pi * h * qz - 1j * math.pi * h * qq * tau)
    without_tau = cmath.exp(-2j * math.pi * h * qz - 1j * math.pi * h * qq)
    shifted = jac.value(u, z + q * tau, tau)

    laws: Dict[str, float] = {
        "d_u": _relative(du / (2j * math.pi), h),
        "z+q": _relative(jac.value(u, z + q, tau), base),
        "quasi_period": _relative(shifted, with_tau * base),
        "tau+1": _relative(jac.value(u, z, tau + 1), base),
        "modular": _relative(jac.value(u, z / tau, -1 / tau),
                             tau**(-count) * cmath.exp(1j * math.pi * h * zz / tau) * base),
        "reflection": _relative(jac.value(u, reflected, tau), -base),
    }
    variant = _relative(shifted, without_tau * base)
    worst = max(laws.values())
    logger.debug("Jacobian %s%d: %s", family, rank, laws)
    return VerificationReport(
        check="jacobian",
        target=f"{family}{rank}",
        status="pass" if worst < tol else "fail",
        max_residual=worst,
        tolerances={"hurwitz_tol": tol},
        details={
            "h_dual": h,
            "positive_roots": count,
            "laws": {name: f"{value:.3e}" for name, value in laws.items()},
            "quasi_period_with_tau": f"{laws['quasi_period']:.3e}",
            "quasi_period_without_tau": f"{variant:.3e}",
        },
    )
