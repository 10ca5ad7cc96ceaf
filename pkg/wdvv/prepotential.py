"""
This module contains the elliptic prepotential of a vee-system and its third-derivative tensor.

Coordinates are ordered (u, z_1, ..., z_N, tau), so index 0 is u and index N+1 is tau.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.data_models import (
    DEFAULT_SEED,
    DEFAULT_SERIES,
    TAU_IMAG_RANGE,
    TAU_REAL_BOUND,
    Z_BOUND,
    ModularParameter,
    SeriesParams,
)
from models.errors import DomainError, LatticePointError
from special_functions.modular import eisenstein
from special_functions.trilog import lattice_distance, third_derivatives
from vee_systems.checks import second_moment
from vee_systems.vsystem import VSystem

logger = logging.getLogger(__name__)

POLE_GUARD = 1e-3

MAX_SAMPLE_ATTEMPTS = 1000


@dataclass(frozen=True)
class ModuliPoint:
    """A point (u, z, tau) of the moduli space, z in the intrinsic coordinates of the system."""
    u: complex
    z: Tuple[complex, ...]
    tau: ModularParameter

    @classmethod
    def of(cls, u: complex, z: Sequence[complex], tau: complex) -> "ModuliPoint":
        return cls(complex(u), tuple(complex(c) for c in z), ModularParameter(tau=tau))

    @property
    def z_array(self) -> np.ndarray:
        return np.array(self.z, dtype=complex)

    @property
    def t(self) -> np.ndarray:
        """The full coordinate vector (u, z, tau)."""
        return np.concatenate([[self.u], self.z_array, [self.tau.tau]])

    def pairings(self, system: VSystem) -> np.ndarray:
        lowered, _, _ = system.numeric
        return lowered @ self.z_array

    def in_strip(self, system: VSystem) -> bool:
        """Whether every pairing lies in the strip |Im z_alpha| < Im tau off the lattice."""
        z_alpha = self.pairings(system)
        tau = self.tau.tau
        return bool(np.all(np.abs(z_alpha.imag) < tau.imag)
                    and np.all(np.asarray(lattice_distance(z_alpha, tau)) > 0))

    def modular_image(self, system: VSystem) -> "ModuliPoint":
        """(u - (z, z)/(2 tau), z/tau, -1/tau)"""
        _, _, gram = system.numeric
        z = self.z_array
        tau = self.tau.tau
        norm = z @ gram @ z
        return ModuliPoint.of(self.u - norm / (2 * tau), z / tau, -1 / tau)

    def tau_shifted(self) -> "ModuliPoint":
        return ModuliPoint(self.u, self.z, self.tau.shifted())

    def lattice_shifted(self, p: Sequence[float], with_tau: bool = True) -> "ModuliPoint":
        """z + p tau, or z + p when with_tau is False."""
        step = np.asarray(p, dtype=float) * (self.tau.tau if with_tau else 1)
        return ModuliPoint.of(self.u, self.z_array + step, self.tau.tau)


@dataclass(frozen=True)
class StructureTensor:
    """The symmetric array c of third derivatives and the flat metric eta."""
    c: np.ndarray
    eta: np.ndarray

    @property
    def rank(self) -> int:
        return self.c.shape[0] - 2

    @property
    def zzz(self) -> np.ndarray:
        n = self.rank
        return self.c[1:n + 1, 1:n + 1, 1:n + 1]

    @property
    def tzz(self) -> np.ndarray:
        n = self.rank
        return self.c[n + 1, 1:n + 1, 1:n + 1]

    @property
    def ttz(self) -> np.ndarray:
        n = self.rank
        return self.c[n + 1, n + 1, 1:n + 1]

    @property
    def ttt(self) -> complex:
        n = self.rank
        return complex(self.c[n + 1, n + 1, n + 1])

    def symmetry_defect(self) -> float:
        c = self.c
        return float(max(np.max(np.abs(c - np.transpose(c, axes))) for axes in permutations(range(3))))

    def unity_defect(self) -> float:
        return float(np.max(np.abs(self.c[0] - self.eta)))


@dataclass(frozen=True)
class Prepotential:
    """
    F = u^2 tau / 2 - u (z, z) / 2 + sum h_alpha f(z_alpha, tau), plus mu Li3(1, q) when corrected.

    The correction contributes mu E_4(tau) / 120 to c_{tau tau tau} with mu = (10/3) h^2.
    """
    system: VSystem
    corrected: bool = False

    def __post_init__(self):
        if self.corrected and self.h_dual is None:
            raise DomainError(f"{self.system.name} is not well distributed, so mu is undefined")

    @classmethod
    def for_system(cls, system: VSystem, corrected: Optional[bool] = None) -> "Prepotential":
        """Corrected exactly when h is nonzero, unless stated otherwise."""
        if corrected is None:
            h_dual = second_moment(system).h_dual
            corrected = h_dual is not None and h_dual != 0
        return cls(system, corrected)

    @cached_property
    def h_dual(self) -> Optional[Fraction]:
        return second_moment(self.system).h_dual

    @property
    def mu(self) -> Fraction:
        if not self.corrected:
            return Fraction(0)
        return Fraction(10, 3) * self.h_dual**2

    @property
    def label(self) -> str:
        return f"{self.system.name}{' corrected' if self.corrected else ''}"

    def eta(self) -> np.ndarray:
        n = self.system.dim
        _, _, gram = self.system.numeric
        eta = np.zeros((n + 2, n + 2), dtype=complex)
        eta[0, n + 1] = eta[n + 1, 0] = 1
        eta[1:n + 1, 1:n + 1] = -gram
        return eta

    def third_derivatives(self, pt: ModuliPoint, params: SeriesParams = DEFAULT_SERIES,
                          guard: float = POLE_GUARD) -> np.ndarray:
        """f^(3,0), ..., f^(0,3) at every pairing z_alpha, shape (4, len(system))."""
        z_alpha = pt.pairings(self.system)
        tau = pt.tau.tau
        distance = np.asarray(lattice_distance(z_alpha, tau))
        if np.any(distance < guard):
            closest = int(np.argmin(distance))
            raise LatticePointError(
                f"pairing {z_alpha[closest]} lies within {guard} of the lattice for tau = {tau}")
        return third_derivatives(z_alpha, tau, params, reduce=True)


def _fill(c: np.ndarray, index: Tuple[int, ...], value: complex):
    for perm in set(permutations(index)):
        c[perm] = value


def c_tensor(prepotential: Prepotential, pt: ModuliPoint, params: SeriesParams = DEFAULT_SERIES,
             guard: float = POLE_GUARD) -> StructureTensor:
    """
    Assemble all third derivatives of the prepotential at a point.

    Args:
        prepotential: The prepotential
        pt: The point (u, z, tau)
        params: Truncation policy for the q-series
        guard: Pole guard radius for the pairings

    Returns:
        The structure tensor with c_{u u tau} = 1 and c_{u i j} = -g_ij

    Raises:
        LatticePointError: If a pairing is within the guard radius of the lattice
        SeriesTruncationError: If a q-series does not settle
    """
    system = prepotential.system
    n = system.dim
    if len(pt.z) != n:
        raise DomainError(f"point has {len(pt.z)} coordinates, {system.name} needs {n}")
    lowered, hs, _ = system.numeric
    f30, f21, f12, f03 = prepotential.third_derivatives(pt, params, guard)

    eta = prepotential.eta()
    c = np.zeros((n + 2,) * 3, dtype=complex)
    for a in range(n + 2):
        for b in range(n + 2):
            if eta[a, b]:
                _fill(c, (0, a, b), eta[a, b])

    t = n + 1
    zzz = np.einsum("a,ai,aj,ak->ijk", hs * f30, lowered, lowered, lowered)
    tzz = np.einsum("a,ai,aj->ij", hs * f21, lowered, lowered)
    ttz = (hs * f12) @ lowered
    ttt = np.sum(hs * f03)
    if prepotential.corrected:
        ttt += float(prepotential.mu) * eisenstein(4, pt.tau.tau, params) / 120

    c[1:t, 1:t, 1:t] = zzz
    c[t, 1:t, 1:t] = c[1:t, t, 1:t] = c[1:t, 1:t, t] = tzz
    c[t, t, 1:t] = c[t, 1:t, t] = c[1:t, t, t] = ttz
    c[t, t, t] = ttt
    return StructureTensor(c, eta)


def sample_points(system: VSystem, count: int, seed: int = DEFAULT_SEED,
                  guard: float = POLE_GUARD) -> List[ModuliPoint]:
    """
    Draw reproducible points from the default region.

    tau has |Re tau| <= 1/2 and Im tau in the default range; z is scaled so that
    every pairing has modulus at most Z_BOUND. Points with a pairing inside the
    guard radius are redrawn.

    Raises:
        DomainError: If no admissible point turns up
    """
    rng = np.random.default_rng(seed)
    lowered, _, _ = system.numeric
    points = []
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        if len(points) == count:
            break
        tau = complex(rng.uniform(-TAU_REAL_BOUND, TAU_REAL_BOUND), rng.uniform(*TAU_IMAG_RANGE))
        z = rng.uniform(-1, 1, system.dim) + 1j * rng.uniform(-1, 1, system.dim)
        z *= Z_BOUND * rng.uniform(0.3, 1) / np.max(np.abs(lowered @ z))
        u = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        # the modular image divides the pairings by tau
        if np.min(np.abs(lowered @ z)) < guard * max(1.0, abs(tau)):
            continue
        points.append(ModuliPoint.of(u, z, tau))
    if len(points) < count:
        raise DomainError(f"could only draw {len(points)} of {count} points away from the poles of {system.name}")
    logger.debug("sampled %d points for %s with seed %d", count, system.name, seed)
    return points
