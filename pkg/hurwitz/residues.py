"""
This module contains the critical points of a superpotential and the residue formulas

    g(d', d'')        = sum_{d lambda = 0} res d'(log lambda) d''(log lambda) / d log lambda
    c*(d', d'', d''') = (1 / 2 pi i) sum_{d lambda = 0} res d'(log lambda) d''(log lambda) d'''(log lambda) / d log lambda

At a simple critical point v_c the residue is the product of the moduli
derivatives divided by (log lambda)''(v_c).
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from models.data_models import DEFAULT_HURWITZ_TOL, CriticalPointRecord, VerificationReport
from models.errors import CriticalPointError, LatticePointError
from special_functions.trilog import lattice_distance
from utils.report_utils import format_complex
from vee_systems.catalog import catalog
from vee_systems.vsystem import VSystem
from hurwitz.superpotential import Superpotential, dlog_lambda, lambda_eval, moduli_log_derivative
from wdvv.prepotential import ModuliPoint, Prepotential, c_tensor

logger = logging.getLogger(__name__)

SEED_GRID = 40
NEWTON_STEPS = 60
NEWTON_TOL = 1e-13
DEDUPE_DISTANCE = 1e-7
SEED_POLE_DISTANCE = 1e-3
SIMPLE_THRESHOLD = 1e-8


@dataclass(frozen=True)
class CriticalPoint:
    v: complex
    value: complex
    second_log_derivative: complex

    def to_record(self) -> CriticalPointRecord:
        return CriticalPointRecord(
            v=format_complex(self.v),
            value=format_complex(self.value),
            second_log_derivative=format_complex(self.second_log_derivative),
        )


def _to_cell(v: np.ndarray, tau: complex) -> np.ndarray:
    """Representative a + b tau with 0 <= a, b < 1."""
    b = np.floor(v.imag / tau.imag)
    v = v - b * tau
    return v - np.floor(v.real)


def _newton(sp: Superpotential, seeds: np.ndarray) -> np.ndarray:
    tau = sp.tau.tau
    v = seeds
    for _ in range(NEWTON_STEPS):
        try:
            with np.errstate(all="ignore"):
                step = dlog_lambda(sp, v, 1) / dlog_lambda(sp, v, 2)
        except LatticePointError:
            break
        v = v - step
        # log lambda is elliptic, so iterates can be folded back into the cell
        v = _to_cell(v[np.isfinite(v)], tau)
        if not len(v):
            break
    return v


def critical_points(sp: Superpotential) -> List[CriticalPoint]:
    """
    All critical points of lambda in the fundamental cell.

    Newton iteration on (log lambda)' starts from a grid of seeds over the cell;
    seeds near poles or zeros of lambda are dropped and the survivors are
    deduplicated modulo the lattice.

    Returns:
        The critical points sorted by rounded (Re v, Im v)

    Raises:
        CriticalPointError: If the count differs from degree + 1 or a critical point is not simple
    """
    tau = sp.tau.tau
    grid = (np.arange(SEED_GRID) + 0.5) / SEED_GRID
    a, b = np.meshgrid(grid, grid)
    seeds = (a + b * tau).ravel()
    singular = np.concatenate([[0], sp.zeros()])
    near = np.min([np.asarray(lattice_distance(seeds - s, tau)) for s in singular], axis=0)
    seeds = seeds[near > SEED_POLE_DISTANCE]

    found = _newton(sp, seeds)
    found = found[np.isfinite(found)]
    found = _to_cell(found, tau)
    near = np.min([np.asarray(lattice_distance(found - s, tau)) for s in singular], axis=0)
    found = found[near > SEED_POLE_DISTANCE]
    residual = np.abs(dlog_lambda(sp, found, 1))
    found = found[residual < math.sqrt(NEWTON_TOL)]

    unique: List[complex] = []
    for v in found:
        if all(lattice_distance(v - w, tau) > DEDUPE_DISTANCE for w in unique):
            unique.append(complex(v))
    unique.sort(key=lambda v: (round(v.real, 6), round(v.imag, 6)))

    if len(unique) != sp.expected_critical_points:
        raise CriticalPointError(
            f"{sp.name} has {len(unique)} critical points, expected {sp.expected_critical_points}")
    points = []
    for v in unique:
        second = dlog_lambda(sp, v, 2)
        if abs(second) < SIMPLE_THRESHOLD:
            raise CriticalPointError(f"critical point {v} of {sp.name} is not simple")
        points.append(CriticalPoint(v, lambda_eval(sp, v), second))
    logger.debug("%s: %d critical points", sp.name, len(points))
    return points


def critical_values_distinct(points: Sequence[CriticalPoint], tol: float = 1e-8) -> bool:
    return all(abs(p.value - q.value) > tol * max(1.0, abs(p.value)) for p, q in combinations(points, 2))


def _moduli_derivatives(sp: Superpotential, points: Sequence[CriticalPoint]) -> np.ndarray:
    """L[c, k] = d log lambda / d m_k at the critical point c."""
    size = len(sp.moduli_vector())
    return np.array([[moduli_log_derivative(sp, p.v, k) for k in range(size)] for p in points])


def residue_pairing(sp: Superpotential, d1: int, d2: int,
                    points: Optional[Sequence[CriticalPoint]] = None) -> complex:
    points = points if points is not None else critical_points(sp)
    return complex(sum(moduli_log_derivative(sp, p.v, d1) * moduli_log_derivative(sp, p.v, d2)
                       / p.second_log_derivative for p in points))


def residue_cstar(sp: Superpotential, d1: int, d2: int, d3: int,
                  points: Optional[Sequence[CriticalPoint]] = None) -> complex:
    points = points if points is not None else critical_points(sp)
    total = sum(moduli_log_derivative(sp, p.v, d1) * moduli_log_derivative(sp, p.v, d2)
                * moduli_log_derivative(sp, p.v, d3) / p.second_log_derivative for p in points)
    return complex(total / (2j * math.pi))


def residue_tensors(sp: Superpotential, points: Optional[Sequence[CriticalPoint]] = None):
    """The full residue metric g and tensor c* over all moduli, from one set of derivatives."""
    points = points if points is not None else critical_points(sp)
    derivatives = _moduli_derivatives(sp, points)
    weights = 1 / np.array([p.second_log_derivative for p in points])
    g = np.einsum("c,ci,cj->ij", weights, derivatives, derivatives)
    cstar = np.einsum("c,ci,cj,ck->ijk", weights, derivatives, derivatives, derivatives) / (2j * math.pi)
    return g, cstar


def closed_form_system(sp: Superpotential) -> VSystem:
    """The catalog system whose prepotential the residue formulas reproduce."""
    if sp.family == "A":
        return catalog("A1_4", {"nu": "1/2"}) if sp.rank == 1 else catalog("AN", {"N": sp.rank})
    return catalog("BN", {"N": sp.rank})


def compare_closed_form(sp: Superpotential, tol: float = DEFAULT_HURWITZ_TOL) -> VerificationReport:
    """
    Compare the residue metric and tensor with the analytic tensor of the closed-form prepotential.

    The unity axiom c*(d_u, ., .) = g is checked first and reported separately.
    """
    target = f"{sp.name} at u={format_complex(sp.u)}, tau={format_complex(sp.tau.tau)}"
    try:
        points = critical_points(sp)
    except CriticalPointError as exc:
        return VerificationReport(check="hurwitz", target=target, status="fail",
                                  tolerances={"hurwitz_tol": tol}, details={"reason": str(exc)})
    g, cstar = residue_tensors(sp, points)
    system = closed_form_system(sp)
    analytic = c_tensor(Prepotential(system, corrected=False), ModuliPoint(sp.u, sp.z, sp.tau), sp.params)

    residuals = {
        "unity": float(np.max(np.abs(cstar[0] - g))),
        "metric": float(np.max(np.abs(g - analytic.eta))),
        "symmetry": float(max(np.max(np.abs(cstar - np.transpose(cstar, axes)))
                              for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0)))),
        "c_star": float(np.max(np.abs(cstar - analytic.c))),
    }
    worst = max(residuals.values())
    return VerificationReport(
        check="hurwitz",
        target=target,
        status="pass" if worst < tol else "fail",
        max_residual=worst,
        tolerances={"hurwitz_tol": tol},
        details={
            "closed_form": system.name,
            "residuals": {name: f"{value:.3e}" for name, value in residuals.items()},
            "critical_points": [p.to_record().model_dump() for p in points],
            "critical_values_distinct": critical_values_distinct(points),
        },
    )
