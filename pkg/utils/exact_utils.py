"""
This module contains utilities for exact rational linear algebra.
"""

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple, Union

from models.errors import DomainError

RationalLike = Union[int, Fraction, str]
Matrix = List[List[Fraction]]


def to_fraction(value: RationalLike) -> Fraction:
    """
    Convert an integer, Fraction or "p/q" string into a Fraction.

    Args:
        value: The value to convert

    Returns:
        The exact rational value
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational string: {value!r}") from exc
    raise DomainError(f"not a rational value: {value!r}")


def format_rational(value: Fraction) -> str:
    """
    Format a Fraction as "p/q", or "p" when the denominator is one.

    Args:
        value: The rational to format

    Returns:
        The bit-exact string form
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Exact Euclidean dot product of two coordinate sequences."""
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def mat_vec(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    """Exact matrix-vector product."""
    return [dot(row, v) for row in matrix]


def identity_matrix(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def row_echelon(matrix: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """
    Reduce a rational matrix to reduced row echelon form.

    Args:
        matrix: Rows of exact rationals

    Returns:
        The reduced rows and the list of pivot columns
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_exact(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(matrix)[1])


def invert_exact(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    """
    Invert a square rational matrix by Gauss-Jordan elimination.

    Args:
        matrix: A non-singular square matrix

    Returns:
        The exact inverse

    Raises:
        DomainError: If the matrix is singular
    """
    n = len(matrix)
    augmented = [list(row) + identity_row for row, identity_row in zip(matrix, identity_matrix(n))]
    reduced, pivots = row_echelon(augmented)
    if pivots[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Solve the square system matrix * x = rhs exactly.

    Args:
        matrix: A non-singular square matrix
        rhs: Right-hand side

    Returns:
        The unique solution
    """
    inverse = invert_exact(matrix)
    return mat_vec(inverse, rhs)


def determinant_exact(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-preserving elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                factor = rows[i][c] / rows[c][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def common_denominator(values: Sequence[Fraction]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid: returns (x, y, g) with x*a + y*b == g.
    """
    # Invariants:
    #          x * a +      y * b ==      g
    #     next_x * a + next_y * b == next_g
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def integer_row_basis(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Compute an echelon basis of the Z-span of integer vectors.

    Each vector is reduced against the current basis column by column; a
    pivot that does not divide the incoming entry is replaced by the gcd
    combination of the two rows.

    Args:
        vectors: Integer vectors of a common length

    Returns:
        Basis rows in echelon form, pivots increasing
    """
    if not vectors:
        return []
    n = len(vectors[0])
    pivot_row = [None] * n
    basis: List[List[int]] = []
    for vec0 in vectors:
        vec = list(vec0)
        for j in range(n):
            if vec[j] == 0:
                continue
            p = pivot_row[j]
            if p is None:
                basis.append(vec)
                pivot_row[j] = len(basis) - 1
                break
            row = basis[p]
            a = row[j]
            b = vec[j]
            if b % a == 0:
                q = b // a
                vec = [v - q * r for v, r in zip(vec, row)]
            else:
                x, y, g = xgcd(a, b)
                ag = a // g
                mbg = -b // g
                new_row = [x * r + y * v for r, v in zip(row, vec)]
                vec = [mbg * r + ag * v for r, v in zip(row, vec)]
                basis[p] = new_row
    return sorted(basis, key=lambda row: next(i for i, x in enumerate(row) if x))
