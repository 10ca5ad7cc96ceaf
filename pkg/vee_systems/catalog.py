"""
This module contains the catalog of elliptic vee-systems built from Weyl group data.
"""

import logging
import math
import re
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel

from models.errors import CatalogError, VerificationError
from root_systems.build import build, irregular_orbit, roots_by_norm
from root_systems.vectors import BilinearForm, RationalVector
from utils.exact_utils import format_rational, to_fraction
from vee_systems.vsystem import VSystem

logger = logging.getLogger(__name__)

ParamValue = Union[str, int, Fraction]


class CatalogEntry(BaseModel):
    """A catalog name with its rank and parameter slots, as listed by the CLI."""
    name: str
    rank: str
    params: List[str]
    notes: str


CATALOG = [
    CatalogEntry(name="A1_2", rank="1", params=[], notes="the two roots of A1 with h = 3/8"),
    CatalogEntry(name="A1_4", rank="1", params=["nu"],
                 notes="+-alpha with h = 1/2 and +-alpha' with (alpha', alpha') = nu, h = -1/(2 nu^2); h = 0 at nu = 1/2"),
    CatalogEntry(name="A2", rank="2", params=[], notes="roots of A2, h = 1/3"),
    CatalogEntry(name="B2", rank="2", params=[], notes="roots of B2, h_long = 1/4, h_short = 1; B2 also appears as BN(2)"),
    CatalogEntry(name="G2", rank="2", params=["h"], notes="roots of G2, h_long = (1-h)/18, h_short = (3h-1)/6"),
    CatalogEntry(name="F4", rank="4", params=["h"], notes="roots of F4, h_long = (3-h)/6, h_short = (2h-3)/3"),
    CatalogEntry(name="E6", rank="6", params=[], notes="roots of E6, h = 1/6"),
    CatalogEntry(name="E7", rank="7", params=[], notes="roots of E7, h = 1/8"),
    CatalogEntry(name="E8", rank="8", params=[], notes="roots of E8, h = 1/12"),
    CatalogEntry(name="AN", rank="N", params=["N"],
                 notes="roots of A_N with h = 1/2 and the irregular orbit +-beta^(i) with h = -(N+1)/2; h = 0"),
    CatalogEntry(name="BN", rank="N", params=["N"],
                 notes="BC_N under twice the Euclidean product: h = 1/2 on +-e_i, 1 on (+-e_i +-e_j)/2, -2N on +-e_i/2; h = 0"),
]

_CALL = re.compile(r"^(?P<name>\w+)\((?P<args>[^)]*)\)$")

# single positional parameter of each parameterized entry
_POSITIONAL = {"A1_4": "nu", "G2": "h", "F4": "h", "AN": "N", "BN": "N"}


def catalog_names() -> List[str]:
    return [entry.name for entry in CATALOG]


def parse_name(text: str, params: Optional[Mapping[str, ParamValue]] = None) -> Tuple[str, Dict[str, ParamValue]]:
    """
    Split "G2(h=0)", "AN(3)" or "A2" into a catalog name and parameters.

    Values in params take precedence over those written in the name.
    """
    merged: Dict[str, ParamValue] = dict(params or {})
    match = _CALL.match(text.strip())
    if not match:
        return text.strip(), merged
    name = match.group("name")
    for part in filter(None, (p.strip() for p in match.group("args").split(","))):
        if "=" in part:
            key, value = (s.strip() for s in part.split("=", 1))
        elif name in _POSITIONAL:
            key, value = _POSITIONAL[name], part
        else:
            raise CatalogError(f"{name} takes no parameters")
        merged.setdefault(key, value)
    return name, merged


def _rational_param(name: str, params: Mapping[str, ParamValue], key: str) -> Fraction:
    if key not in params:
        raise CatalogError(f"{name} needs the parameter {key}")
    try:
        return to_fraction(params[key])
    except VerificationError as exc:
        raise CatalogError(f"{name}: invalid value for {key}: {params[key]!r}") from exc


def _rank_param(name: str, params: Mapping[str, ParamValue], minimum: int) -> int:
    value = _rational_param(name, params, "N")
    if value.denominator != 1 or value < minimum:
        raise CatalogError(f"{name}: N must be an integer >= {minimum}, got {params['N']}")
    return int(value)


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _intrinsic(family: str, rank: Optional[int], weights) -> Tuple[BilinearForm, List[Tuple[RationalVector, Fraction]]]:
    # express root system vectors in the basis of their span, weights maps norm -> h
    system = build(family, rank)
    form = BilinearForm(tuple(tuple(row) for row in system.gram()))
    pairs = []
    for norm, roots in roots_by_norm(system).items():
        for r in roots:
            pairs.append((system.coordinates(r), weights(norm)))
    return form, pairs


def catalog(name: str, params: Optional[Mapping[str, ParamValue]] = None) -> VSystem:
    """
    Build a catalog system.

    Args:
        name: One of the catalog names, optionally with call syntax such as "G2(h=0)"
        params: Parameter values, as strings, integers or Fractions

    Returns:
        The system in intrinsic coordinates

    Raises:
        CatalogError: For an unknown name or a missing or invalid parameter
    """
    name, params = parse_name(name, params)
    shown: Dict[str, str] = {}

    if name == "A1_2":
        form = BilinearForm(((2,),))
        pairs = [(RationalVector.of(1), Fraction(3, 8)), (RationalVector.of(-1), Fraction(3, 8))]
        title = name
    elif name == "A1_4":
        nu = _rational_param(name, params, "nu")
        if nu <= 0:
            raise CatalogError(f"A1_4: nu must be positive, got {format_rational(nu)}")
        r = _rational_sqrt(nu / 2)
        if r is None:
            raise CatalogError(f"A1_4: nu/2 must be the square of a rational, got nu = {format_rational(nu)}")
        form = BilinearForm(((2,),))
        h_short = -1 / (2 * nu**2)
        pairs = [(RationalVector.of(s), Fraction(1, 2)) for s in (1, -1)]
        pairs += [(RationalVector.of(s * r), h_short) for s in (1, -1)]
        shown["nu"] = format_rational(nu)
        title = f"A1_4(nu={shown['nu']})"
    elif name in ("A2", "E6", "E7", "E8"):
        h = {"A2": Fraction(1, 3), "E6": Fraction(1, 6), "E7": Fraction(1, 8), "E8": Fraction(1, 12)}[name]
        form, pairs = _intrinsic(name if name != "A2" else "A", 2 if name == "A2" else None, lambda norm: h)
        title = name
    elif name == "B2":
        form, pairs = _intrinsic("B", 2, lambda norm: Fraction(1, 4) if norm == 2 else Fraction(1))
        title = name
    elif name == "G2":
        h = _rational_param(name, params, "h")
        form, pairs = _intrinsic("G2", 2, lambda norm: (1 - h) / 18 if norm == 6 else (3 * h - 1) / 6)
        shown["h"] = format_rational(h)
        title = f"G2(h={shown['h']})"
    elif name == "F4":
        h = _rational_param(name, params, "h")
        form, pairs = _intrinsic("F4", 4, lambda norm: (3 - h) / 6 if norm == 2 else (2 * h - 3) / 3)
        shown["h"] = format_rational(h)
        title = f"F4(h={shown['h']})"
    elif name == "AN":
        n = _rank_param(name, params, 2)
        system = build("A", n)
        form = BilinearForm(tuple(tuple(row) for row in system.gram()))
        pairs = [(system.coordinates(r), Fraction(1, 2)) for r in system.roots]
        pairs += [(system.coordinates(b), Fraction(-(n + 1), 2)) for b in irregular_orbit("A", n)]
        shown["N"] = str(n)
        title = f"AN({n})"
    elif name == "BN":
        n = _rank_param(name, params, 1)
        weights = {Fraction(2): Fraction(1, 2), Fraction(1): Fraction(1), Fraction(1, 2): Fraction(-2 * n)}
        form, pairs = _intrinsic("BC", n, lambda norm: weights[norm])
        shown["N"] = str(n)
        title = f"BN({n})"
    else:
        raise CatalogError(f"unknown catalog system {name!r}; known: {', '.join(catalog_names())}")

    logger.debug("catalog %s: %d vectors", title, len(pairs))
    return VSystem.from_pairs(title, form, pairs, shown)
