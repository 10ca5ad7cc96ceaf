"""
This module contains root system construction, Weyl reflections and orbits.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from models.data_models import RootSystemDocument
from models.errors import CatalogError, DomainError, OrbitBoundError
from root_systems.vectors import BilinearForm, RationalVector
from utils.exact_utils import invert_exact, mat_vec

logger = logging.getLogger(__name__)

FAMILIES = ("A", "B", "C", "D", "BC", "G2", "F4", "E6", "E7", "E8")

# families with a single admissible rank
FIXED_RANKS = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

DEFAULT_ORBIT_BOUND = 100_000

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RootSystem:
    """
    A finite root system in its conventional ambient realization.

    basis spans the subspace the roots live in; coordinates() expresses a
    vector of that subspace in the basis and gram() is the Gram matrix of
    the basis, giving the intrinsic rank-dimensional realization.
    """
    family: str
    rank: int
    form: BilinearForm
    roots: Tuple[RationalVector, ...]
    basis: Tuple[RationalVector, ...]
    zero_sum: bool = False

    @property
    def ambient_dim(self) -> int:
        return self.form.dim

    def __len__(self) -> int:
        return len(self.roots)

    def norms(self) -> List[Fraction]:
        return sorted({self.form.norm(r) for r in self.roots})

    def positive_roots(self) -> List[RationalVector]:
        """Roots on which a fixed generic linear functional is positive, in canonical order."""
        return sorted(r for r in self.roots if _height(r) > 0)

    def simple_roots(self) -> List[RationalVector]:
        """Positive roots that are not the sum of two positive roots."""
        return _simple(self.roots)

    def coroot(self, alpha: RationalVector) -> RationalVector:
        return alpha * (2 / self.form.norm(alpha))

    def gram(self) -> List[List[Fraction]]:
        return [[self.form.pair(a, b) for b in self.basis] for a in self.basis]

    def coordinates(self, v: RationalVector) -> RationalVector:
        """
        Coordinates of v with respect to basis.

        Raises:
            DomainError: If v does not lie in the span of the basis
        """
        pairings = [self.form.pair(b, v) for b in self.basis]
        coords = mat_vec(invert_exact(self.gram()), pairings)
        rebuilt = RationalVector.zero(self.ambient_dim)
        for c, b in zip(coords, self.basis):
            rebuilt = rebuilt + b * c
        if rebuilt != v:
            raise DomainError(f"{v} does not lie in the span of the {self.family}{self.rank} roots")
        return RationalVector(tuple(coords))

    def contains(self, v: RationalVector) -> bool:
        return v in set(self.roots)

    def to_document(self) -> RootSystemDocument:
        return RootSystemDocument(
            family=self.family,
            rank=self.rank,
            form=self.form.to_strings(),
            roots=[r.to_strings() for r in self.roots],
        )

    @classmethod
    def from_document(cls, document: RootSystemDocument) -> "RootSystem":
        form = BilinearForm.from_strings(document.form)
        roots = tuple(sorted(RationalVector.from_strings(r) for r in document.roots))
        family = document.family
        zero_sum = family == "A"
        return cls(family, document.rank, form, roots, _basis(family, document.rank, roots, form), zero_sum)


def _height(v: RationalVector) -> Fraction:
    # generic functional: balanced-ternary weights keep every root off its kernel
    return sum((c * 3**i for i, c in enumerate(v.coords)), Fraction(0))


def _simple(roots: Iterable[RationalVector]) -> List[RationalVector]:
    positive = sorted(r for r in roots if _height(r) > 0)
    members = set(positive)
    simple = [a for a in positive if not any((a - b) in members for b in positive if b != a)]
    return sorted(simple, key=_height)


def _basis(family: str, rank: int, roots: Sequence[RationalVector], form: BilinearForm) -> Tuple[RationalVector, ...]:
    dim = form.dim
    if family == "A":
        last = RationalVector.unit(dim, dim - 1)
        return tuple(RationalVector.unit(dim, k) - last for k in range(rank))
    if family in ("E6", "E7"):
        return tuple(_simple(roots))
    return tuple(RationalVector.unit(dim, k) for k in range(dim))


def _signed_pairs(dim: int, scale: Fraction = Fraction(1)) -> List[RationalVector]:
    vectors = []
    for i, j in combinations(range(dim), 2):
        for si, sj in product((1, -1), repeat=2):
            coords = [Fraction(0)] * dim
            coords[i] = si * scale
            coords[j] = sj * scale
            vectors.append(RationalVector(tuple(coords)))
    return vectors


def _signed_units(dim: int, scale: Fraction = Fraction(1)) -> List[RationalVector]:
    vectors = []
    for i in range(dim):
        for s in (1, -1):
            vectors.append(RationalVector.unit(dim, i) * (s * scale))
    return vectors


def _e8_roots() -> List[RationalVector]:
    roots = _signed_pairs(8)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(RationalVector(tuple(s * HALF for s in signs)))
    return roots


def _orthogonal_to(roots: Iterable[RationalVector], normals: Sequence[RationalVector]) -> List[RationalVector]:
    return [r for r in roots if all(sum(a * b for a, b in zip(r, n)) == 0 for n in normals)]


def build(family: str, rank: Optional[int] = None) -> RootSystem:
    """
    Build a root system in its conventional realization.

    A_N lives on the zero-sum hyperplane of Q^(N+1); B, C, D and BC in Q^N
    (BC with twice the Euclidean product); G2 in simple-root coordinates with
    Gram matrix [[6, -3], [-3, 2]]; E6 and E7 inside the standard E8 lattice.

    Args:
        family: One of A, B, C, D, BC, G2, F4, E6, E7, E8
        rank: The rank; optional for the exceptional families

    Returns:
        The root system

    Raises:
        CatalogError: For an unknown family or a family/rank mismatch
    """
    if family not in FAMILIES:
        raise CatalogError(f"unknown root system family {family!r}")
    if family in FIXED_RANKS:
        if rank not in (None, FIXED_RANKS[family]):
            raise CatalogError(f"{family} has rank {FIXED_RANKS[family]}, got {rank}")
        rank = FIXED_RANKS[family]
    if rank is None or rank < 1:
        raise CatalogError(f"{family} needs a positive rank, got {rank}")
    if family == "D" and rank < 2:
        raise CatalogError(f"{family}{rank} is not supported")

    zero_sum = False
    if family == "A":
        dim = rank + 1
        form = BilinearForm.euclidean(dim)
        roots = [RationalVector.unit(dim, i) - RationalVector.unit(dim, j)
                 for i in range(dim) for j in range(dim) if i != j]
        zero_sum = True
    elif family == "B":
        form = BilinearForm.euclidean(rank)
        roots = _signed_pairs(rank) + _signed_units(rank)
    elif family == "C":
        form = BilinearForm.euclidean(rank)
        roots = _signed_pairs(rank) + _signed_units(rank, Fraction(2))
    elif family == "D":
        form = BilinearForm.euclidean(rank)
        roots = _signed_pairs(rank)
    elif family == "BC":
        form = BilinearForm.euclidean(rank, 2)
        roots = _signed_pairs(rank, HALF) + _signed_units(rank) + _signed_units(rank, HALF)
    elif family == "G2":
        form = BilinearForm(((6, -3), (-3, 2)))
        combos = [(0, 1), (1, 1), (1, 2), (1, 0), (1, 3), (2, 3)]
        roots = [RationalVector.of(a, b) * s for a, b in combos for s in (1, -1)]
    elif family == "F4":
        form = BilinearForm.euclidean(4)
        roots = _signed_pairs(4) + _signed_units(4)
        roots += [RationalVector(tuple(s * HALF for s in signs)) for signs in product((1, -1), repeat=4)]
    else:
        form = BilinearForm.euclidean(8)
        roots = _e8_roots()
        e = [RationalVector.unit(8, i) for i in range(8)]
        if family == "E7":
            roots = _orthogonal_to(roots, [e[6] + e[7]])
        elif family == "E6":
            roots = _orthogonal_to(roots, [e[6] + e[7], e[5] - e[6]])

    roots = tuple(sorted(set(roots)))
    logger.debug("built %s%d with %d roots", family, rank, len(roots))
    return RootSystem(family, rank, form, roots, _basis(family, rank, roots, form), zero_sum)


def reflect(alpha: RationalVector, v: RationalVector, form: BilinearForm) -> RationalVector:
    """
    The reflection v - 2 (alpha, v) / (alpha, alpha) alpha.

    Raises:
        DomainError: If alpha is isotropic
    """
    norm = form.norm(alpha)
    if norm == 0:
        raise DomainError(f"cannot reflect in the isotropic vector {alpha}")
    return v - alpha * (2 * form.pair(alpha, v) / norm)


def orbit(generators: Sequence[RationalVector], seed: RationalVector, form: BilinearForm,
          bound: int = DEFAULT_ORBIT_BOUND) -> List[RationalVector]:
    """
    Closure of {seed} under the reflections in generators.

    Args:
        generators: Reflection vectors, non-empty
        seed: Starting vector
        form: The bilinear form
        bound: Largest orbit size accepted

    Returns:
        The orbit in canonical order

    Raises:
        DomainError: If generators is empty
        OrbitBoundError: If the closure grows beyond bound
    """
    if not generators:
        raise DomainError("orbit needs at least one generator")
    seen = {seed}
    frontier = [seed]
    while frontier:
        next_frontier = []
        for v in frontier:
            for g in generators:
                image = reflect(g, v, form)
                if image not in seen:
                    seen.add(image)
                    next_frontier.append(image)
                    if len(seen) > bound:
                        raise OrbitBoundError(f"orbit exceeded {bound} vectors")
        frontier = next_frontier
    return sorted(seen)


def fundamental_weight(rank: int, index: int, family: str = "A") -> RationalVector:
    """
    The A_N fundamental weight sum_{r<=i} e_r - (i/(N+1)) sum_r e_r in Q^(N+1).

    Raises:
        CatalogError: For a family other than A
        DomainError: If index is outside 1..N
    """
    if family != "A":
        raise CatalogError(f"fundamental weights are provided for A only, got {family}")
    if not 1 <= index <= rank:
        raise DomainError(f"weight index must lie in 1..{rank}, got {index}")
    dim = rank + 1
    shift = Fraction(index, dim)
    return RationalVector(tuple(Fraction(int(r < index)) - shift for r in range(dim)))


def irregular_orbit(family: str, rank: int) -> List[RationalVector]:
    """
    The irregular orbit appended to the A_N and BC_N catalog systems.

    A_N: {+-beta^(i)} with beta^(i) = (N e_i - sum_{j != i} e_j) / (N + 1), the
    orbit of the last fundamental weight together with its negative.
    C_N and BC_N: {+-e_i / 2}.
    """
    if family == "A":
        system = build("A", rank)
        seed = fundamental_weight(rank, rank)
    elif family in ("C", "BC"):
        system = build("C", rank)
        seed = RationalVector.unit(rank, 0) * HALF
    else:
        raise CatalogError(f"no irregular orbit for family {family}")
    generators = system.simple_roots()
    vectors = orbit(generators, seed, system.form)
    return sorted(set(vectors) | {-v for v in vectors})


def weyl_generators(system: RootSystem) -> List[RationalVector]:
    """Simple roots, whose reflections generate the Weyl group."""
    return system.simple_roots()


def roots_by_norm(system: RootSystem) -> Dict[Fraction, List[RationalVector]]:
    groups: Dict[Fraction, List[RationalVector]] = {}
    for r in system.roots:
        groups.setdefault(system.form.norm(r), []).append(r)
    return groups
