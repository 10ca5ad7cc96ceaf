"""
This module contains exact rational vectors and bilinear forms.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

from models.errors import DomainError
from utils.exact_utils import (
    RationalLike,
    determinant_exact,
    format_rational,
    invert_exact,
    mat_vec,
    to_fraction,
)


@dataclass(frozen=True, order=True)
class RationalVector:
    """
    A coordinate vector of exact rationals.

    Ordering is lexicographic on the coordinates and is used as the canonical
    order of vector sets.
    """
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *values: RationalLike) -> "RationalVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, dim: int) -> "RationalVector":
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "RationalVector":
        return cls(tuple(Fraction(int(i == index)) for i in range(dim)))

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> "RationalVector":
        return cls(tuple(values))

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coords]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __add__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RationalVector":
        return RationalVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar: RationalLike) -> "RationalVector":
        scalar = to_fraction(scalar)
        return RationalVector(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_floats(self) -> List[float]:
        return [float(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"RationalVector({', '.join(self.to_strings())})"


@dataclass(frozen=True)
class BilinearForm:
    """
    A symmetric non-degenerate bilinear form given by its Gram matrix.

    Raises:
        DomainError: If the matrix is not square, not symmetric or singular
    """
    matrix: Tuple[Tuple[Fraction, ...], ...]
    _inverse: Tuple[Tuple[Fraction, ...], ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        matrix = tuple(tuple(to_fraction(x) for x in row) for row in self.matrix)
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise DomainError("form matrix must be square and non-empty")
        if any(matrix[i][j] != matrix[j][i] for i in range(n) for j in range(i)):
            raise DomainError("form matrix must be symmetric")
        if determinant_exact(matrix) == 0:
            raise DomainError("form matrix must be non-degenerate")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_inverse", tuple(tuple(row) for row in invert_exact(matrix)))

    @classmethod
    def euclidean(cls, dim: int, scale: RationalLike = 1) -> "BilinearForm":
        """scale times the standard Euclidean product."""
        scale = to_fraction(scale)
        return cls(tuple(tuple(scale * int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def from_strings(cls, rows: Iterable[Sequence[str]]) -> "BilinearForm":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._inverse

    def lower(self, v: RationalVector) -> RationalVector:
        """The covector M v."""
        return RationalVector(tuple(mat_vec(self.matrix, v.coords)))

    def pair(self, u: RationalVector, v: RationalVector) -> Fraction:
        lowered = mat_vec(self.matrix, v.coords)
        return sum((a * b for a, b in zip(u.coords, lowered) if a and b), Fraction(0))

    def norm(self, v: RationalVector) -> Fraction:
        return self.pair(v, v)

    def to_strings(self) -> List[List[str]]:
        return [[format_rational(x) for x in row] for row in self.matrix]

    def as_floats(self) -> List[List[float]]:
        return [[float(x) for x in row] for row in self.matrix]
