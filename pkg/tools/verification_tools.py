"""
This module contains the verification runners invoked by the CLI, one per check family.

Every runner takes the resolved system and the run configuration and returns its
reports in a fixed order, so the output depends only on (config, seed).
"""

import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.data_models import (
    CHECK_FAMILIES,
    TAU_IMAG_RANGE,
    TAU_REAL_BOUND,
    Z_BOUND,
    RunConfig,
    VerificationReport,
)
from models.errors import DomainError, LatticePointError, RankDeficiencyError, VerificationError
from hurwitz.jacobian import jacobian_transform_check
from hurwitz.residues import compare_closed_form
from hurwitz.superpotential import Superpotential
from identities.theta_identities import (
    RANK2_GROUPS,
    a2_identity,
    fs_f_form,
    fs_theta,
    rank2_identity,
    theta_ratio_crosscheck,
)
from special_functions.modular import eisenstein
from special_functions.trilog import lattice_distance
from vee_systems.checks import dual_lattice_basis, is_elliptic, second_moment
from vee_systems.vsystem import VSystem
from wdvv.a1 import a1_equation_residual, a1_tilde_check
from wdvv.associators import associators, associators_expanded
from wdvv.limits import rational_limit, trig_limit
from wdvv.prepotential import ModuliPoint, Prepotential, sample_points
from wdvv.transformations import check_boundedness, check_modularity, check_periodicity

logger = logging.getLogger(__name__)

# E-series tensors accumulate more rounding
HIGH_RANK_DIM = 6
HIGH_RANK_WDVV_TOL = 1e-7

TRANSFORMATION_POINTS = 10
IDENTITY_POINTS = 50
HURWITZ_SAMPLES = 5
HURWITZ_MAX_RANK = 2
MAX_DRAWS = 50
# minimum lattice distance of sampled arguments, zeros and critical data
SAMPLE_SEPARATION = 0.05

Runner = Callable[[VSystem, RunConfig], List[VerificationReport]]


def _timed(config: RunConfig, check: Callable[..., VerificationReport], *args, **kwargs) -> VerificationReport:
    start = time.perf_counter()
    report = check(*args, **kwargs)
    if config.timings:
        report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def _skipped(check: str, target: str, reason: str, tolerances: Optional[Dict[str, float]] = None) -> VerificationReport:
    return VerificationReport(check=check, target=target, status="skipped",
                              tolerances=tolerances or {}, details={"reason": reason})


def _residual_report(check: str, target: str, residuals: Sequence[float], tol: float, tol_name: str,
                     **details) -> VerificationReport:
    worst = float(max(residuals))
    return VerificationReport(
        check=check,
        target=target,
        status="pass" if worst < tol else "fail",
        max_residual=worst,
        tolerances={tol_name: tol},
        details={"points": len(residuals), **details},
    )


def combine_reports(check: str, target: str, reports: Sequence[VerificationReport]) -> VerificationReport:
    """
    Fold per-point reports of one check into a single report.

    Fails if any point fails, is skipped only if every point was skipped.
    """
    ran = [r for r in reports if r.status != "skipped"]
    tolerances = reports[0].tolerances if reports else {}
    if not ran:
        reason = reports[0].details.get("reason", "no points") if reports else "no points"
        return _skipped(check, target, reason, tolerances)
    failed = [r for r in ran if r.status == "fail"]
    residuals = [r.max_residual for r in ran if r.max_residual is not None]
    details = {"points": len(ran), "skipped_points": len(reports) - len(ran)}
    if failed:
        details["reason"] = failed[0].details.get("reason", f"{len(failed)} of {len(ran)} points fail")
        details["failed_points"] = len(failed)
    worst = ran[int(np.argmax([r.max_residual or 0.0 for r in ran]))]
    if "laws" in worst.details:
        details["worst_laws"] = worst.details["laws"]
    return VerificationReport(
        check=check,
        target=target,
        status="fail" if failed else "pass",
        max_residual=max(residuals) if residuals else None,
        tolerances=tolerances,
        details=details,
    )


def wdvv_tolerance(system: VSystem, config: RunConfig) -> float:
    if system.dim >= HIGH_RANK_DIM:
        return max(config.wdvv_tol, HIGH_RANK_WDVV_TOL)
    return config.wdvv_tol


def _random_tau(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-TAU_REAL_BOUND, TAU_REAL_BOUND), rng.uniform(*TAU_IMAG_RANGE))


def _random_complex(rng: np.random.Generator, size: int, bound: float = Z_BOUND) -> np.ndarray:
    return bound * (rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size))


def _separated(values: np.ndarray, tau: complex) -> bool:
    return bool(np.min(np.asarray(lattice_distance(values, tau))) > SAMPLE_SEPARATION)


def run_vee_checks(system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """The exact ellipticity decision."""
    return [_timed(config, is_elliptic, system)]


def _associator_reports(prepotential: Prepotential, points: Sequence[ModuliPoint], tol: float,
                        config: RunConfig) -> List[VerificationReport]:
    label = prepotential.label
    start = time.perf_counter()
    assembled = [associators(prepotential, pt, config.series) for pt in points]
    parts = {name: max(float(np.max(np.abs(d), initial=0.0)) for d in values)
             for name, values in zip(("d1", "d2", "d3"), zip(*assembled))}
    report = _residual_report("associators", label, [a.max_abs() for a in assembled], tol, "wdvv_tol",
                              families={k: f"{v:.3e}" for k, v in parts.items()})
    if config.timings:
        report.elapsed_ms = (time.perf_counter() - start) * 1000

    start = time.perf_counter()
    differences = [associators_expanded(prepotential, pt, config.series).difference(a)
                   for pt, a in zip(points, assembled)]
    expanded = _residual_report("associators_expanded", label, differences, tol, "wdvv_tol")
    if config.timings:
        expanded.elapsed_ms = (time.perf_counter() - start) * 1000
    return [report, expanded]


def uncorrected_delta1(system: VSystem, points: Sequence[ModuliPoint], tol: float,
                       config: RunConfig) -> VerificationReport:
    """
    Without the Li3(1, q) term D1 equals (mu / 120) E_4 (u, v), which is what the correction cancels.
    """
    prepotential = Prepotential(system, corrected=False)
    mu = float(Prepotential(system, corrected=True).mu)
    _, _, gram = system.numeric
    residuals = []
    for pt in points:
        d1 = associators(prepotential, pt, config.series).d1
        expected = mu * eisenstein(4, pt.tau.tau, config.series) / 120 * gram
        residuals.append(float(np.max(np.abs(d1 - expected))))
    return _residual_report("uncorrected_delta1", prepotential.label, residuals, tol, "wdvv_tol",
                            mu_over_120=f"{mu / 120:.16e}")


def run_wdvv_checks(system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """
    Associators at sampled points, the expanded cross-check, and the transformation laws.

    A system that is not well distributed has no prepotential of this form, so
    every check is skipped.
    """
    tol = wdvv_tolerance(system, config)
    tolerances = {"wdvv_tol": tol}
    names = ("associators", "associators_expanded", "modularity", "periodicity", "boundedness")
    if second_moment(system).h_dual is None:
        return [_skipped(name, system.name, "not well distributed", tolerances) for name in names]

    prepotential = Prepotential.for_system(system)
    label = prepotential.label
    try:
        points = sample_points(system, config.samples, config.seed)
    except DomainError as exc:
        return [_skipped(name, label, str(exc), tolerances) for name in names]

    reports = _associator_reports(prepotential, points, tol, config)
    if prepotential.corrected:
        reports.append(_timed(config, uncorrected_delta1, system, points, tol, config))

    transform_points = points[:TRANSFORMATION_POINTS]
    start = time.perf_counter()
    modular = combine_reports("modularity", label, [
        check_modularity(prepotential, pt, tol, config.series) for pt in transform_points])
    if config.timings:
        modular.elapsed_ms = (time.perf_counter() - start) * 1000
    reports.append(modular)

    try:
        p = dual_lattice_basis(system)[0]
    except RankDeficiencyError as exc:
        reports.append(_skipped("periodicity", label, str(exc), tolerances))
    else:
        start = time.perf_counter()
        periodic = combine_reports("periodicity", label, [
            check_periodicity(prepotential, pt, p, tol, config.series) for pt in transform_points])
        periodic.details["p"] = p.to_strings()
        if config.timings:
            periodic.elapsed_ms = (time.perf_counter() - start) * 1000
        reports.append(periodic)

    try:
        reports.append(_timed(config, check_boundedness, prepotential, points[0].z, tol=tol, params=config.series))
    except VerificationError as exc:
        reports.append(_skipped("boundedness", label, str(exc), tolerances))
    return reports


def run_limit_checks(system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """Associativity of the rational limit and of the trigonometric limit matching h."""
    tol = wdvv_tolerance(system, config)
    tolerances = {"wdvv_tol": tol}
    if second_moment(system).h_dual is None:
        return [_skipped(name, system.name, "not well distributed", tolerances)
                for name in ("rational_limit", "trig_limit")]
    try:
        zs = [pt.z for pt in sample_points(system, config.samples, config.seed)]
    except DomainError as exc:
        return [_skipped(name, system.name, str(exc), tolerances) for name in ("rational_limit", "trig_limit")]

    reports = [_timed(config, rational_limit(system).check, zs, tol)]
    try:
        limit = trig_limit(system, params=config.series)
    except DomainError as exc:
        reports.append(_skipped("trig_limit", system.name, str(exc), tolerances))
    else:
        reports.append(_timed(config, limit.check, zs, tol))
    return reports


def _collect(rng: np.random.Generator, count: int, evaluate: Callable[[np.random.Generator], complex]) -> List[float]:
    """Evaluate a residual at count random arguments, redrawing those that land near the lattice."""
    residuals: List[float] = []
    for _ in range(MAX_DRAWS * count):
        if len(residuals) == count:
            break
        try:
            residuals.append(abs(evaluate(rng)))
        except LatticePointError:
            continue
    return residuals


def _pair_argument(rng: np.random.Generator) -> Tuple[complex, complex, complex]:
    a, b = _random_complex(rng, 2)
    return complex(a), complex(b), _random_tau(rng)


def run_identity_checks(system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """
    The functional identities between third derivatives of f and theta_1.

    They do not depend on the system; the same seeded arguments are used for any target.
    """
    tol = config.identity_tol
    rng = np.random.default_rng(config.seed)

    def pair_identity(identity: Callable[..., complex]) -> Callable[[np.random.Generator], complex]:
        def evaluate(generator: np.random.Generator) -> complex:
            a, b, tau = _pair_argument(generator)
            if not _separated(np.array([a, b, a + b]), tau):
                raise LatticePointError(f"{a}, {b} too close to the lattice")
            return identity(a, b, tau, config.series)
        return evaluate

    def rank2(group: str) -> Callable[[np.random.Generator], complex]:
        def evaluate(generator: np.random.Generator) -> complex:
            z = _random_complex(generator, 2, bound=Z_BOUND / 2)
            return rank2_identity(group, z, _random_tau(generator), config.series)
        return evaluate

    def a2(which: int) -> Callable[[np.random.Generator], complex]:
        return pair_identity(lambda x, y, tau, params: a2_identity(which, x, y, tau, params))

    def a1_equation(generator: np.random.Generator) -> complex:
        z, tau = complex(_random_complex(generator, 1, bound=Z_BOUND / 2)[0]), _random_tau(generator)
        if not _separated(np.array([z, 2 * z]), tau):
            raise LatticePointError(f"{z} too close to the lattice")
        return a1_equation_residual(z, tau, config.series)

    checks: List[Tuple[str, str, Callable[[np.random.Generator], complex]]] = [
        ("fs_theta", "theta_1", pair_identity(fs_theta)),
        ("fs_f_form", "f", pair_identity(fs_f_form)),
    ]
    checks += [("rank2_identity", group, rank2(group)) for group in RANK2_GROUPS]
    checks += [("a2_identity_1", "A2", a2(1)), ("a2_identity_2", "A2", a2(2))]
    checks += [
        ("theta_ratio_crosscheck", "theta_1", lambda generator: theta_ratio_crosscheck(_random_tau(generator),
                                                                                       config.series)),
        ("a1_equation", "A1", a1_equation),
    ]

    reports = []
    for check, target, evaluate in checks:
        start = time.perf_counter()
        residuals = _collect(rng, IDENTITY_POINTS, evaluate)
        if not residuals:
            reports.append(_skipped(check, target, "no admissible arguments", {"identity_tol": tol}))
            continue
        report = _residual_report(check, target, residuals, tol, "identity_tol")
        if config.timings:
            report.elapsed_ms = (time.perf_counter() - start) * 1000
        reports.append(report)

    z, tau = 0.17 + 0.05j, _random_tau(rng)
    reports.append(_timed(config, a1_tilde_check, z, tau, config.wdvv_tol, config.series))
    return reports


def weyl_family(system: VSystem) -> Optional[Tuple[str, int]]:
    """The A or B root system a catalog system is built from, if any."""
    name = system.name
    if name.startswith("A1_4"):
        return "A", 1
    if name in ("A2", "B2"):
        return name[0], 2
    if name.startswith(("AN(", "BN(")) and "N" in system.params:
        return name[0], int(system.params["N"])
    return None


def has_superpotential(system: VSystem) -> bool:
    """True for the systems whose prepotential comes from a superpotential: A1_4(1/2), AN(N) and BN(N)."""
    return system.name == "A1_4(nu=1/2)" or system.name.startswith(("AN(", "BN("))


def superpotential_samples(family: str, rank: int, count: int, seed: int) -> List[Superpotential]:
    """
    Draw moduli (u, z, tau) whose zeros are distinct, away from the pole and from each other.

    Raises:
        DomainError: If the draws keep colliding
    """
    rng = np.random.default_rng(seed)
    samples: List[Superpotential] = []
    for _ in range(MAX_DRAWS * count):
        if len(samples) == count:
            break
        tau = _random_tau(rng)
        u = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        z = _random_complex(rng, rank, bound=Z_BOUND)
        sp = Superpotential.of(family, u, z, tau)
        zeros = sp.zeros()
        differences = [zeros[i] - zeros[j] for i in range(len(zeros)) for j in range(i)]
        if _separated(np.concatenate([zeros, differences]), tau):
            samples.append(sp)
    if len(samples) < count:
        raise DomainError(f"could only draw {len(samples)} of {count} separated {family}{rank} moduli")
    return samples


def _jacobian_report(family: str, rank: int, config: RunConfig) -> VerificationReport:
    rng = np.random.default_rng(config.seed)
    for _ in range(MAX_DRAWS):
        u = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        z = _random_complex(rng, rank, bound=Z_BOUND / 2)
        tau = _random_tau(rng)
        try:
            return _timed(config, jacobian_transform_check, family, rank, u, z, tau,
                          config.hurwitz_tol, config.series)
        except LatticePointError:
            continue
    return _skipped("jacobian", f"{family}{rank}", "no admissible point", {"hurwitz_tol": config.hurwitz_tol})


def run_hurwitz_checks(system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """
    Residue metric and tensor of the superpotential against the analytic tensor, and the Jacobian laws.

    Ranks above two run only with high_rank set.
    """
    tolerances = {"hurwitz_tol": config.hurwitz_tol}
    family = weyl_family(system)
    if family is None:
        return [_skipped("hurwitz", system.name, "no superpotential or Jacobian for this system", tolerances)]
    name, rank = family

    reports = []
    if not has_superpotential(system):
        reports.append(_skipped("hurwitz", system.name, "roots-only system, no superpotential", tolerances))
    elif rank > HURWITZ_MAX_RANK and not config.high_rank:
        reports.append(_skipped("hurwitz", system.name, f"rank {rank} needs --high-rank", tolerances))
    else:
        start = time.perf_counter()
        try:
            samples = superpotential_samples(name, rank, HURWITZ_SAMPLES, config.seed)
        except DomainError as exc:
            reports.append(_skipped("hurwitz", system.name, str(exc), tolerances))
        else:
            report = combine_reports("hurwitz", system.name, [
                compare_closed_form(sp, config.hurwitz_tol) for sp in samples])
            report.details["moduli_samples"] = len(samples)
            report.details["expected_critical_points"] = samples[0].expected_critical_points
            if config.timings:
                report.elapsed_ms = (time.perf_counter() - start) * 1000
            reports.append(report)

    reports.append(_jacobian_report(name, rank, config))
    return reports


RUNNERS: Dict[str, Runner] = {
    "vee": run_vee_checks,
    "wdvv": run_wdvv_checks,
    "limits": run_limit_checks,
    "identities": run_identity_checks,
    "hurwitz": run_hurwitz_checks,
}


def run_family(family: str, system: VSystem, config: RunConfig) -> List[VerificationReport]:
    """
    Run one check family and stamp the seed on its reports.

    Raises:
        KeyError: For a family outside CHECK_FAMILIES
    """
    if family not in CHECK_FAMILIES:
        raise KeyError(family)
    logger.info("running %s checks on %s", family, system.name)
    reports = RUNNERS[family](system, config)
    for report in reports:
        report.seed = config.seed
    logger.info("%s: %d reports, %d failed", family, len(reports), sum(r.status == "fail" for r in reports))
    return reports
