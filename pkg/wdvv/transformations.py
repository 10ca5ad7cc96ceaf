"""
This module contains the modular and lattice transformation checks of the structure tensor.

Both checks use the lowered coordinate vector t_a = eta_ab t^b and the square
(t, t) = 2 u tau - (z, z) of the flat metric.
"""

import logging
from functools import lru_cache
from typing import Dict, Sequence

import numpy as np

from models.data_models import DEFAULT_SERIES, DEFAULT_WDVV_TOL, SeriesParams, VerificationReport
from models.errors import DomainError, VerificationError
from root_systems.vectors import RationalVector
from vee_systems.checks import integral_pairings, quartic_check
from vee_systems.vsystem import VSystem
from wdvv.associators import Associators, from_structure
from wdvv.prepotential import ModuliPoint, Prepotential, StructureTensor, c_tensor

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _quartic_passes(system: VSystem) -> bool:
    return quartic_check(system).passed


def _residual(lhs, rhs) -> float:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(rhs)))))


def _report(check: str, prepotential: Prepotential, laws: Dict[str, float], tol: float,
            **details) -> VerificationReport:
    worst = max(laws.values())
    return VerificationReport(
        check=check,
        target=prepotential.label,
        status="pass" if worst < tol else "fail",
        max_residual=worst,
        tolerances={"wdvv_tol": tol},
        details={"laws": {name: f"{value:.3e}" for name, value in laws.items()}, **details},
    )


def _skipped(check: str, prepotential: Prepotential, reason: str, tol: float) -> VerificationReport:
    return VerificationReport(check=check, target=prepotential.label, status="skipped",
                              tolerances={"wdvv_tol": tol}, details={"reason": reason})


def modular_laws(before: StructureTensor, after: StructureTensor, pt: ModuliPoint) -> Dict[str, float]:
    """Residuals of the laws relating c at pt and at its image under tau -> -1/tau."""
    n = before.rank
    eta = before.eta
    tau = pt.tau.tau
    t = pt.t
    t_low = eta @ t
    tt = t @ eta @ t
    c = before.c
    zs = slice(1, n + 1)
    g, tz = eta[zs, zs], t_low[zs]

    ijk = tau * before.zzz - (np.einsum("ij,k->ijk", g, tz) + np.einsum("jk,i->ijk", g, tz)
                              + np.einsum("ki,j->ijk", g, tz))
    tij = tau * np.einsum("ija,a->ij", c[zs, zs, :], t) - 0.5 * g * tt - np.outer(tz, tz)
    tti = tau * np.einsum("iab,a,b->i", c[zs], t, t) - tz * tt
    ttt = tau * np.einsum("abc,a,b,c->", c, t, t, t) - 0.75 * tt**2
    return {
        "c_zzz": _residual(after.zzz, ijk),
        "c_tzz": _residual(after.tzz, tij),
        "c_ttz": _residual(after.ttz, tti),
        "c_ttt": _residual(after.ttt, ttt),
    }


def modular_associator_laws(before: Associators, after: Associators, pt: ModuliPoint) -> Dict[str, float]:
    """Residuals of the weight laws of the associators under tau -> -1/tau."""
    tau = pt.tau.tau
    z = pt.z_array
    d1, d2, d3 = before
    expected3 = tau**2 * d3
    expected2 = tau**3 * d2 + tau**2 * np.einsum("r,irkj->ijk", z, d3)
    expected1 = (tau**4 * d1 - tau**3 * (np.einsum("r,ijr->ij", z, d2) + np.einsum("r,jir->ij", z, d2))
                 + tau**2 * np.einsum("a,b,abij->ij", z, z, d3))
    return {
        "delta1": _residual(after.d1, expected1),
        "delta2": _residual(after.d2, expected2),
        "delta3": _residual(after.d3, expected3),
    }


def check_modularity(prepotential: Prepotential, pt: ModuliPoint, tol: float = DEFAULT_WDVV_TOL,
                     params: SeriesParams = DEFAULT_SERIES) -> VerificationReport:
    """
    Compare c and the associators at pt with their values at the modular image and at tau + 1.

    The quartic condition on the system is checked first; the laws only hold under it.
    """
    system = prepotential.system
    if not _quartic_passes(system):
        return VerificationReport(check="modularity", target=prepotential.label, status="fail",
                                  tolerances={"wdvv_tol": tol},
                                  details={"reason": "quartic condition fails"})
    image = pt.modular_image(system)
    try:
        before = c_tensor(prepotential, pt, params)
        after = c_tensor(prepotential, image, params)
        shifted = c_tensor(prepotential, pt.tau_shifted(), params)
    except VerificationError as exc:
        return _skipped("modularity", prepotential, str(exc), tol)

    laws = modular_laws(before, after, pt)
    laws.update(modular_associator_laws(from_structure(before), from_structure(after), pt))
    laws["tau+1"] = _residual(shifted.c, before.c)
    logger.debug("modularity of %s at tau=%s: %s", prepotential.label, pt.tau.tau, laws)
    return _report("modularity", prepotential, laws, tol, tau=f"{pt.tau.tau}")


def periodic_laws(before: StructureTensor, after: StructureTensor, p: np.ndarray) -> Dict[str, float]:
    """Residuals of the laws relating c at z and at z + p tau."""
    n = before.rank
    zs = slice(1, n + 1)
    g = before.eta[zs, zs]
    p_low = g @ p
    pp = p @ g @ p
    zzz, tzz, ttz, ttt = before.zzz, before.tzz, before.ttz, before.ttt

    ijk = zzz + (np.einsum("i,jk->ijk", p_low, g) + np.einsum("j,ki->ijk", p_low, g)
                 + np.einsum("k,ij->ijk", p_low, g))
    tij = tzz - np.einsum("a,ija->ij", p, zzz) - (np.outer(p_low, p_low) + 0.5 * pp * g)
    tti = ttz - 2 * p @ tzz + np.einsum("a,b,abi->i", p, p, zzz) + pp * p_low
    tt3 = (ttt - 3 * p @ ttz + 3 * p @ tzz @ p - np.einsum("a,b,c,abc->", p, p, p, zzz)
           - 0.75 * pp**2)
    return {
        "c_zzz": _residual(after.zzz, ijk),
        "c_tzz": _residual(after.tzz, tij),
        "c_ttz": _residual(after.ttz, tti),
        "c_ttt": _residual(after.ttt, tt3),
    }


def periodic_associator_laws(before: Associators, after: Associators, p: np.ndarray) -> Dict[str, float]:
    """Residuals of the shift laws of the associators under z -> z + p tau."""
    d1, d2, d3 = before
    expected2 = d2 + np.einsum("a,ijka->ijk", p, d3)
    expected1 = (d1 + np.einsum("a,ija->ij", p, d2) + np.einsum("a,jia->ij", p, d2)
                 + np.einsum("a,b,ijab->ij", p, p, d3))
    return {
        "delta1": _residual(after.d1, expected1),
        "delta2": _residual(after.d2, expected2),
        "delta3": _residual(after.d3, d3),
    }


def check_periodicity(prepotential: Prepotential, pt: ModuliPoint, p: RationalVector,
                      tol: float = DEFAULT_WDVV_TOL, params: SeriesParams = DEFAULT_SERIES) -> VerificationReport:
    """
    Compare c and the associators at z with their values at z + p tau and z + p.

    Args:
        prepotential: The prepotential
        pt: The base point
        p: A vector with (p, alpha) integral for every alpha, in intrinsic coordinates
        tol: Relative residual bound
        params: Truncation policy

    Returns:
        The report, with one residual per law

    Raises:
        DomainError: If some pairing (p, alpha) is not an integer
    """
    system = prepotential.system
    if not integral_pairings(system, p):
        raise DomainError(f"({', '.join(p.to_strings())}) has a non-integral pairing with {system.name}")
    shift = np.array(p.as_floats())
    try:
        before = c_tensor(prepotential, pt, params)
        after = c_tensor(prepotential, pt.lattice_shifted(shift), params)
        real = c_tensor(prepotential, pt.lattice_shifted(shift, with_tau=False), params)
    except VerificationError as exc:
        return _skipped("periodicity", prepotential, str(exc), tol)

    laws = periodic_laws(before, after, shift)
    laws.update(periodic_associator_laws(from_structure(before), from_structure(after), shift))
    laws["z+p"] = _residual(real.c, before.c)
    return _report("periodicity", prepotential, laws, tol, p=p.to_strings())


def boundedness_sweep(prepotential: Prepotential, z: Sequence[complex], taus: Sequence[complex],
                      params: SeriesParams = DEFAULT_SERIES) -> np.ndarray:
    """
    The non-constant blocks of c at fixed z along a sequence of tau values.

    Returns:
        Array of shape (len(taus), K) holding the flattened z-z-z, tau-z-z, tau-tau-z
        and tau-tau-tau entries at each tau
    """
    rows = []
    for tau in taus:
        tensor = c_tensor(prepotential, ModuliPoint.of(0, z, tau), params)
        rows.append(np.concatenate([tensor.zzz.ravel(), tensor.tzz.ravel(), tensor.ttz, [tensor.ttt]]))
    return np.array(rows)


def check_boundedness(prepotential: Prepotential, z: Sequence[complex], real: float = 0.1,
                      heights: Sequence[float] = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
                      tol: float = DEFAULT_WDVV_TOL, params: SeriesParams = DEFAULT_SERIES) -> VerificationReport:
    """
    Check that the c-entries settle as Im tau grows, as power series in q must.

    Passes when the last step of the sweep moves every entry by less than tol
    and the steps never grow.
    """
    values = boundedness_sweep(prepotential, z, [complex(real, y) for y in heights], params)
    steps = np.max(np.abs(np.diff(values, axis=0)), axis=1)
    settled = bool(np.all(np.isfinite(values))) and steps[-1] < tol and bool(np.all(np.diff(steps) <= tol))
    return VerificationReport(
        check="boundedness",
        target=prepotential.label,
        status="pass" if settled else "fail",
        max_residual=float(steps[-1]),
        tolerances={"wdvv_tol": tol},
        details={"steps": [f"{s:.3e}" for s in steps], "max_entry": f"{np.max(np.abs(values)):.6e}"},
    )
