"""
This module contains the exact checks deciding whether a VSystem is an elliptic vee-system.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from models.data_models import VerificationReport
from models.errors import DomainError, RankDeficiencyError
from root_systems.build import reflect
from root_systems.vectors import RationalVector
from utils.exact_utils import common_denominator, format_rational, integer_row_basis, invert_exact
from vee_systems.vsystem import PlaneSlice, SliceMember, VSystem

logger = logging.getLogger(__name__)


@dataclass
class SecondMomentResult:
    passed: bool
    h_dual: Optional[Fraction]
    deviation: List[List[Fraction]]


@dataclass
class QuarticResult:
    passed: bool
    deviation: Dict[Tuple[int, int, int, int], Fraction] = field(default_factory=dict)


@dataclass
class PoleViolation:
    alpha: RationalVector
    slice_key: RationalVector
    v: Fraction
    kind: str
    value: Fraction

    def describe(self) -> str:
        return (f"{self.kind} sum {format_rational(self.value)} at alpha=({', '.join(self.alpha.to_strings())}), "
                f"plane ({', '.join(self.slice_key.to_strings())}), v={format_rational(self.v)}")


@dataclass
class LatticeResult:
    passed: bool
    achieved_rank: int
    basis: List[RationalVector] = field(default_factory=list)


def second_moment(system: VSystem) -> SecondMomentResult:
    """
    Compare sum h_alpha (alpha, u)(alpha, v) with 2 h (u, v).

    Args:
        system: The candidate system

    Returns:
        The exact h on success, otherwise the deviation matrix from the best scalar
    """
    n = system.dim
    moment = [[Fraction(0)] * n for _ in range(n)]
    for v, h in system.entries:
        a = system.lowered(v)
        for i in range(n):
            if a[i]:
                for j in range(n):
                    moment[i][j] += h * a[i] * a[j]
    gram = system.form.matrix
    i0, j0 = next((i, j) for i in range(n) for j in range(n) if gram[i][j])
    h_dual = moment[i0][j0] / (2 * gram[i0][j0])
    deviation = [[moment[i][j] - 2 * h_dual * gram[i][j] for j in range(n)] for i in range(n)]
    passed = not any(x for row in deviation for x in row)
    return SecondMomentResult(passed, h_dual if passed else None, deviation)


def quartic_check(system: VSystem) -> QuarticResult:
    """
    Compare sum h_alpha alpha^4 with 3 Sym(g (x) g), component-wise on sorted index tuples.

    The tensor side is g_ij g_kl + g_ik g_jl + g_il g_jk with g the Gram matrix.
    """
    n = system.dim
    g = system.form.matrix
    lowered = [(system.lowered(v), 2 * h) for v, h in system.representatives()]
    deviation = {}
    for i, j, k, l in combinations_with_replacement(range(n), 4):
        total = Fraction(0)
        for a, h in lowered:
            if a[i] and a[j] and a[k] and a[l]:
                total += h * a[i] * a[j] * a[k] * a[l]
        expected = g[i][j] * g[k][l] + g[i][k] * g[j][l] + g[i][l] * g[j][k]
        if total != expected:
            deviation[(i, j, k, l)] = total - expected
    return QuarticResult(not deviation, deviation)


def _direction_key(v: RationalVector) -> RationalVector:
    lead = next(c for c in v if c)
    return v * (1 / lead)


def plane_decomposition(system: VSystem, alpha: RationalVector) -> List[PlaneSlice]:
    """
    Partition the vectors not collinear with alpha into the 2-plane slices through alpha.

    Args:
        system: The system
        alpha: A vector of the system

    Returns:
        Slices in canonical order of their keys

    Raises:
        DomainError: If alpha is not in the system or is isotropic
    """
    if not system.contains(alpha):
        raise DomainError(f"{alpha} is not a vector of {system.name}")
    form = system.form
    norm = form.norm(alpha)
    if norm == 0:
        raise DomainError(f"{alpha} is isotropic")
    grouped: Dict[RationalVector, List[Tuple[RationalVector, Fraction, RationalVector]]] = {}
    for beta, h in system.entries:
        perp = beta - alpha * (form.pair(alpha, beta) / norm)
        if perp.is_zero():
            continue
        grouped.setdefault(_direction_key(perp), []).append((beta, h, perp))
    slices = []
    for key in sorted(grouped):
        members = grouped[key]
        alpha_perp = members[0][2]
        lead = next(i for i, c in enumerate(alpha_perp) if c)
        sliced = tuple(
            SliceMember(beta, h, form.pair(alpha, beta) / norm, perp[lead] / alpha_perp[lead])
            for beta, h, perp in members
        )
        slices.append(PlaneSlice(alpha, alpha_perp, key, sliced))
    return slices


def _group_sums(system: VSystem, plane: PlaneSlice) -> Dict[Fraction, Fraction]:
    # S_v = sum h (alpha, beta)(beta, alpha_perp) over members with (beta, alpha_perp)^2 = v
    form = system.form
    sums: Dict[Fraction, Fraction] = {}
    for m in plane.members:
        along = form.pair(m.vector, plane.alpha_perp)
        v = along * along
        if v:
            sums[v] = sums.get(v, Fraction(0)) + m.h * form.pair(plane.alpha, m.vector) * along
    return sums


def pole_conditions(system: VSystem) -> List[PoleViolation]:
    """
    Check the three families of pole conditions for all n >= 1 exactly.

    On a slice every alpha wedge beta equals b (alpha wedge alpha_perp), so the
    scalar, bivector and 4-tensor sums reduce to the grouped sums S_v times
    1, 1/(alpha_perp, alpha_perp) and v/(alpha_perp, alpha_perp)^2. A
    Vandermonde argument over the distinct v makes the conditions for all n
    equivalent to S_v = 0 for every nonzero v.

    Returns:
        The violations; empty when every condition holds
    """
    violations = []
    form = system.form
    for alpha, _ in system.representatives():
        for plane in plane_decomposition(system, alpha):
            perp_norm = form.norm(plane.alpha_perp)
            for v, total in sorted(_group_sums(system, plane).items()):
                if not total:
                    continue
                violations.append(PoleViolation(alpha, plane.key, v, "scalar", total))
                if perp_norm:
                    violations.append(PoleViolation(alpha, plane.key, v, "bivector", total / perp_norm))
                    violations.append(PoleViolation(alpha, plane.key, v, "4-tensor", total * v / perp_norm**2))
    logger.debug("%s: %d pole condition violations", system.name, len(violations))
    return violations


def power_sums(system: VSystem, alpha: RationalVector, n: int) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """
    The pole condition sums for a single n on every slice through alpha, by brute force.

    Per slice: sum h (alpha,beta)(beta,alpha_perp)^(2n+1), the coefficient of
    alpha wedge alpha_perp in sum h (alpha,beta)(alpha wedge beta)(beta,alpha_perp)^(2n),
    and the coefficient of its square in the 4-tensor sum with (beta,alpha_perp)^(2n+1).
    """
    form = system.form
    results = []
    for plane in plane_decomposition(system, alpha):
        scalar = bivector = tensor = Fraction(0)
        for m in plane.members:
            along = form.pair(m.vector, plane.alpha_perp)
            weight = m.h * form.pair(alpha, m.vector)
            scalar += weight * along ** (2 * n + 1)
            bivector += weight * m.b * along ** (2 * n)
            tensor += weight * m.b**2 * along ** (2 * n + 1)
        results.append((scalar, bivector, tensor))
    return results


def plane_well_distributed(system: VSystem) -> List[PlaneSlice]:
    """
    Planes on which the system is neither well distributed nor reducible.

    On the plane with orthogonal basis (alpha, alpha_perp) the second moment
    M must be diagonal with M_00 / (alpha, alpha) = M_11 / (alpha_perp, alpha_perp),
    or every vector must lie on the alpha line or the alpha_perp line.
    """
    form = system.form
    failures = []
    for alpha, _ in system.representatives():
        norm = form.norm(alpha)
        collinear = [(beta, h) for beta, h in system.entries
                     if (beta - alpha * (form.pair(alpha, beta) / norm)).is_zero()]
        for plane in plane_decomposition(system, alpha):
            basis = (alpha, plane.alpha_perp)
            members = collinear + [(m.vector, m.h) for m in plane.members]
            moment = [[sum((h * form.pair(beta, x) * form.pair(beta, y) for beta, h in members), Fraction(0))
                       for y in basis] for x in basis]
            n0, n1 = form.norm(alpha), form.norm(plane.alpha_perp)
            if moment[0][1] == 0 and moment[0][0] * n1 == moment[1][1] * n0:
                continue
            if all(form.pair(alpha, m.vector) == 0 for m in plane.members):
                continue
            failures.append(plane)
    return failures


def lattice_check(system: VSystem) -> LatticeResult:
    """
    The dual lattice {p : (p, alpha) in Z for all alpha} by exact integer linear algebra.

    The lowered vectors are scaled to integers by their common denominator d,
    an echelon basis B of their integer span is computed, and the columns of
    d B^-1 form a basis of the dual lattice when B is square.

    Returns:
        The result, with a basis of dim vectors on success or the achieved rank
    """
    lowered = [system.lowered(v) for v, _ in system.representatives()]
    d = common_denominator([c for a in lowered for c in a])
    integral = [[int(c * d) for c in a] for a in lowered]
    rows = integer_row_basis(integral)
    rank = len(rows)
    logger.debug("%s: lattice rank %d of %d", system.name, rank, system.dim)
    if rank < system.dim:
        return LatticeResult(False, rank)
    inverse = invert_exact([[Fraction(x) for x in row] for row in rows])
    basis = [RationalVector(tuple(d * inverse[i][j] for i in range(rank))) for j in range(rank)]
    return LatticeResult(True, rank, basis)


def dual_lattice_basis(system: VSystem) -> List[RationalVector]:
    """
    Basis of the dual lattice.

    Raises:
        RankDeficiencyError: If the lattice does not have full rank
    """
    result = lattice_check(system)
    if not result.passed:
        raise RankDeficiencyError(result.achieved_rank, system.dim)
    return result.basis


def integral_pairings(system: VSystem, p: RationalVector) -> bool:
    """True when (p, alpha) is an integer for every alpha."""
    return all(system.form.pair(p, v).denominator == 1 for v in system.vectors)


def classify_pairs(system: VSystem, alpha: RationalVector) -> List[Tuple[PlaneSlice, str]]:
    """
    Tag each slice through alpha as TypeA, TypeB, mixed or other.

    A member beta is Type A paired when sigma_alpha beta is a member up to sign,
    and Type B paired with gamma = 2 (alpha, beta)/(beta, beta) beta - alpha, the
    reflection of alpha fixing the beta line, when gamma is a member up to sign.
    Members orthogonal to alpha are ignored.
    """
    form = system.form
    tagged = []
    for plane in plane_decomposition(system, alpha):
        present = {m.vector for m in plane.members}
        relevant = [m.vector for m in plane.members if form.pair(alpha, m.vector) != 0]
        type_a = {beta for beta in relevant if _signed_member(reflect(alpha, beta, form), present)}
        type_b = set()
        for beta in relevant:
            gamma = beta * (2 * form.pair(alpha, beta) / form.norm(beta)) - alpha
            partner = _signed_member(gamma, present)
            if partner is not None and not gamma.is_zero():
                type_b.update({beta, -beta, partner, -partner})
        if all(beta in type_a for beta in relevant):
            tag = "TypeA"
        elif all(beta in type_b for beta in relevant):
            tag = "TypeB"
        elif all(beta in type_a or beta in type_b for beta in relevant):
            tag = "mixed"
        else:
            tag = "other"
        tagged.append((plane, tag))
    return tagged


def _signed_member(v: RationalVector, present: set) -> Optional[RationalVector]:
    if v in present:
        return v
    if -v in present:
        return -v
    return None


def weyl_invariant(system: VSystem, generators: Sequence[RationalVector]) -> List[Tuple[RationalVector, RationalVector]]:
    """
    Pairs (generator, alpha) where sigma_generator(alpha) is missing or has a different multiplicity.
    """
    violations = []
    for g in generators:
        for alpha, h in system.entries:
            image = reflect(g, alpha, system.form)
            if not system.contains(image) or system.h(image) != h:
                violations.append((g, alpha))
    return violations


def is_elliptic(system: VSystem) -> VerificationReport:
    """
    Decide whether the system is an elliptic vee-system.

    Runs, in order, the second moment, the 2-plane check, the quartic
    condition, the pole conditions and the lattice check; the report lists
    every failed condition and carries h.
    """
    failed = []
    details = {}

    moment = second_moment(system)
    if moment.passed:
        details["h_dual"] = format_rational(moment.h_dual)
    else:
        failed.append("second_moment")

    planes = plane_well_distributed(system)
    if planes:
        failed.append("planes")
        details["bad_planes"] = [p.describe() for p in planes[:5]]

    quartic = quartic_check(system)
    if not quartic.passed:
        failed.append("quartic")
        details["quartic_deviation"] = {
            ",".join(map(str, index)): format_rational(value) for index, value in list(quartic.deviation.items())[:5]
        }

    violations = pole_conditions(system)
    if violations:
        failed.append("pole_conditions")
        details["pole_violations"] = [v.describe() for v in violations[:5]]

    lattice = lattice_check(system)
    details["lattice_rank"] = lattice.achieved_rank
    if not lattice.passed:
        failed.append("lattice")

    details["failed"] = failed
    if failed:
        details["reason"] = f"failed: {', '.join(failed)}"
    return VerificationReport(
        check="is_elliptic",
        target=system.name,
        status="fail" if failed else "pass",
        max_residual=0.0 if not failed else None,
        details=details,
    )
