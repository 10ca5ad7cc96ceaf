"""
This module contains the VSystem type: vectors with multiplicities and a bilinear form.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.data_models import VectorEntry, VSystemDocument
from models.errors import DomainError
from root_systems.vectors import BilinearForm, RationalVector
from utils.exact_utils import RationalLike, format_rational, to_fraction

Entry = Tuple[RationalVector, Fraction]


@dataclass(frozen=True)
class VSystem:
    """
    A finite set of vectors alpha with multiplicities h_alpha in a space with a bilinear form.

    Vectors are given in the coordinates the form is written in. The set must
    be closed under negation with h_{-alpha} = h_alpha and contain no zero vector.

    Raises:
        DomainError: If an invariant is violated
    """
    name: str
    form: BilinearForm
    entries: Tuple[Entry, ...]
    params: Dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        entries = tuple(sorted((v, to_fraction(h)) for v, h in self.entries))
        object.__setattr__(self, "entries", entries)
        lookup = {}
        for v, h in entries:
            if len(v) != self.form.dim:
                raise DomainError(f"{v} does not have dimension {self.form.dim}")
            if v.is_zero():
                raise DomainError("a VSystem cannot contain the zero vector")
            if v in lookup:
                raise DomainError(f"{v} appears twice")
            lookup[v] = h
        for v, h in entries:
            if lookup.get(-v) != h:
                raise DomainError(f"{v} needs its negative with the same multiplicity")

    @classmethod
    def from_pairs(cls, name: str, form: BilinearForm, pairs: Sequence[Tuple[RationalVector, RationalLike]],
                   params: Optional[Dict[str, str]] = None) -> "VSystem":
        return cls(name, form, tuple((v, to_fraction(h)) for v, h in pairs), dict(params or {}))

    @property
    def dim(self) -> int:
        return self.form.dim

    @property
    def vectors(self) -> List[RationalVector]:
        return [v for v, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def multiplicity(self) -> Dict[RationalVector, Fraction]:
        return dict(self.entries)

    def h(self, v: RationalVector) -> Fraction:
        return self.multiplicity[v]

    def contains(self, v: RationalVector) -> bool:
        return v in self.multiplicity

    def representatives(self) -> List[Entry]:
        """One vector of each +- pair: the one whose first nonzero coordinate is positive."""
        return [(v, h) for v, h in self.entries if next(c for c in v if c) > 0]

    def lowered(self, v: RationalVector) -> Tuple[Fraction, ...]:
        return self.form.lower(v).coords

    def with_multiplicity(self, v: RationalVector, h: RationalLike, name: Optional[str] = None) -> "VSystem":
        """Copy with h replaced on the pair +-v."""
        h = to_fraction(h)
        entries = tuple((w, h if w in (v, -v) else hw) for w, hw in self.entries)
        return VSystem(name or f"{self.name}*", self.form, entries, dict(self.params))

    @cached_property
    def numeric(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Float arrays (A, h, G): lowered vectors as rows of A, multiplicities and Gram matrix.

        With these, (alpha, z) = A @ z for intrinsic coordinates z.
        """
        lowered = np.array([[float(c) for c in self.lowered(v)] for v in self.vectors])
        hs = np.array([float(h) for _, h in self.entries])
        gram = np.array(self.form.as_floats())
        return lowered, hs, gram

    def to_document(self) -> VSystemDocument:
        return VSystemDocument(
            name=self.name,
            dim=self.dim,
            form=self.form.to_strings(),
            vectors=[VectorEntry(coords=v.to_strings(), h=format_rational(h)) for v, h in self.entries],
            params=dict(self.params),
        )

    @classmethod
    def from_document(cls, document: VSystemDocument) -> "VSystem":
        form = BilinearForm.from_strings(document.form)
        if form.dim != document.dim:
            raise DomainError(f"form has dimension {form.dim}, document says {document.dim}")
        entries = tuple((RationalVector.from_strings(e.coords), to_fraction(e.h)) for e in document.vectors)
        return cls(document.name, form, entries, dict(document.params))


@dataclass(frozen=True)
class SliceMember:
    """A vector of a plane slice with beta = a * alpha + b * alpha_perp."""
    vector: RationalVector
    h: Fraction
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class PlaneSlice:
    """
    The vectors of a system lying in a 2-plane through alpha, other than multiples of alpha.

    alpha_perp is the alpha-orthogonal part of the first member; key is its
    direction, scaled so the first nonzero coordinate is one.
    """
    alpha: RationalVector
    alpha_perp: RationalVector
    key: RationalVector
    members: Tuple[SliceMember, ...]

    def describe(self) -> str:
        return f"span({', '.join(self.alpha.to_strings())} | {', '.join(self.key.to_strings())})"
