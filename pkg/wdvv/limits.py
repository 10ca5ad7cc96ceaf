"""
This module contains the rational and trigonometric degenerations of the elliptic prepotential.

    rational:  F = sum h (alpha, z)^2 log (alpha, z), metric (dz, dz)
    trig I:    F = sum h Li3(exp(2 pi i (alpha, z))), metric (dz, dz), when h = 0
    trig II:   F = u^3/6 - u (z, z)/2 + (2 pi i)^-3 (3/h)^(1/2) sum h Li3(exp(2 pi i (alpha, z))),
               metric du^2 - (dz, dz), when h != 0
"""

import cmath
import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from models.data_models import DEFAULT_SERIES, DEFAULT_WDVV_TOL, SeriesParams, VerificationReport
from models.errors import DomainError
from special_functions.polylog import polylog
from vee_systems.checks import second_moment
from vee_systems.vsystem import VSystem

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * math.pi

Branch = Literal["I", "II"]


def associativity_residual(c: np.ndarray, eta: np.ndarray) -> float:
    """max |c_ab^m c_mcd - c_ac^m c_mbd| with the index raised by eta."""
    contracted = np.einsum("abm,mn,ncd->abcd", c, np.linalg.inv(eta), c)
    return float(np.max(np.abs(contracted - np.transpose(contracted, (0, 2, 1, 3)))))


class LimitPrepotential(ABC):
    """A degenerate prepotential with constant metric, evaluated at z (and u where present)."""

    name = ""

    def __init__(self, system: VSystem):
        self.system = system
        self.lowered, self.hs, self.gram = system.numeric

    def pairings(self, z: Sequence[complex]) -> np.ndarray:
        return self.lowered @ np.asarray(z, dtype=complex)

    def cubic(self, weights: np.ndarray) -> np.ndarray:
        """sum_alpha weights_alpha alpha_i alpha_j alpha_k"""
        a = self.lowered
        return np.einsum("a,ai,aj,ak->ijk", self.hs * weights, a, a, a)

    @abstractmethod
    def value(self, z: Sequence[complex], u: complex = 0) -> complex:
        ...

    @abstractmethod
    def c_tensor(self, z: Sequence[complex]) -> np.ndarray:
        ...

    @abstractmethod
    def metric(self) -> np.ndarray:
        ...

    def associator(self, z: Sequence[complex]) -> float:
        return associativity_residual(self.c_tensor(z), self.metric())

    def check(self, points: Iterable[Sequence[complex]], tol: float = DEFAULT_WDVV_TOL) -> VerificationReport:
        residuals = [self.associator(z) for z in points]
        worst = max(residuals)
        logger.debug("%s limit of %s: max associator %.3e", self.name, self.system.name, worst)
        return VerificationReport(
            check=f"{self.name}_limit",
            target=self.system.name,
            status="pass" if worst < tol else "fail",
            max_residual=worst,
            tolerances={"wdvv_tol": tol},
            details={"points": len(residuals)},
        )


class RationalLimit(LimitPrepotential):
    name = "rational"

    def value(self, z: Sequence[complex], u: complex = 0) -> complex:
        x = self.pairings(z)
        return complex(np.sum(self.hs * x**2 * np.log(x)))

    def c_tensor(self, z: Sequence[complex]) -> np.ndarray:
        return self.cubic(2 / self.pairings(z))

    def metric(self) -> np.ndarray:
        return self.gram.astype(complex)


class TrigLimitI(LimitPrepotential):
    name = "trig_I"

    def __init__(self, system: VSystem, params: SeriesParams = DEFAULT_SERIES):
        super().__init__(system)
        self.params = params

    def value(self, z: Sequence[complex], u: complex = 0) -> complex:
        return sum(h * polylog(3, cmath.exp(TWO_PI_I * x), self.params)
                   for h, x in zip(self.hs, self.pairings(z)))

    def c_tensor(self, z: Sequence[complex]) -> np.ndarray:
        w = np.exp(TWO_PI_I * self.pairings(z))
        return TWO_PI_I**3 * self.cubic(w / (1 - w))

    def metric(self) -> np.ndarray:
        return self.gram.astype(complex)


class TrigLimitII(LimitPrepotential):
    """Variables (u, z); index 0 of c and of the metric is u."""
    name = "trig_II"

    def __init__(self, system: VSystem, h_dual: Fraction, params: SeriesParams = DEFAULT_SERIES):
        super().__init__(system)
        self.params = params
        self.kappa = math.sqrt(3 / h_dual) if h_dual > 0 else 1j * math.sqrt(-3 / h_dual)

    def value(self, z: Sequence[complex], u: complex = 0) -> complex:
        z = np.asarray(z, dtype=complex)
        trilogs = sum(h * polylog(3, cmath.exp(TWO_PI_I * x), self.params)
                      for h, x in zip(self.hs, self.pairings(z)))
        return u**3 / 6 - u * (z @ self.gram @ z) / 2 + self.kappa * trilogs / TWO_PI_I**3

    def c_tensor(self, z: Sequence[complex]) -> np.ndarray:
        n = self.system.dim
        w = np.exp(TWO_PI_I * self.pairings(z))
        c = np.zeros((n + 1,) * 3, dtype=complex)
        c[0, 0, 0] = 1
        c[0, 1:, 1:] = c[1:, 0, 1:] = c[1:, 1:, 0] = -self.gram
        c[1:, 1:, 1:] = self.kappa * self.cubic(w / (1 - w))
        return c

    def metric(self) -> np.ndarray:
        n = self.system.dim
        eta = np.zeros((n + 1, n + 1), dtype=complex)
        eta[0, 0] = 1
        eta[1:, 1:] = -self.gram
        return eta


def rational_limit(system: VSystem) -> RationalLimit:
    return RationalLimit(system)


def trig_limit(system: VSystem, branch: Optional[Branch] = None,
               params: SeriesParams = DEFAULT_SERIES) -> LimitPrepotential:
    """
    The trigonometric limit of a well-distributed system.

    Args:
        system: The system
        branch: "I" (needs h = 0) or "II" (needs h != 0); chosen from h when omitted
        params: Truncation policy for Li3

    Raises:
        DomainError: If the system is not well distributed or the branch does not match h
    """
    h_dual = second_moment(system).h_dual
    if h_dual is None:
        raise DomainError(f"{system.name} is not well distributed")
    if branch is None:
        branch = "I" if h_dual == 0 else "II"
    if branch == "I":
        if h_dual != 0:
            raise DomainError(f"trigonometric limit I needs h = 0, {system.name} has h = {h_dual}")
        return TrigLimitI(system, params)
    if branch == "II":
        if h_dual == 0:
            raise DomainError(f"trigonometric limit II needs h != 0, {system.name} has h = 0")
        return TrigLimitII(system, h_dual, params)
    raise DomainError(f"unknown trigonometric branch {branch!r}")
