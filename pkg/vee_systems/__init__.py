"""
This module contains candidate vee-systems, their exact ellipticity checks and the catalog.
"""

from vee_systems.vsystem import VSystem, PlaneSlice, SliceMember
from vee_systems.checks import (
    SecondMomentResult,
    QuarticResult,
    PoleViolation,
    LatticeResult,
    second_moment,
    quartic_check,
    plane_decomposition,
    pole_conditions,
    power_sums,
    plane_well_distributed,
    lattice_check,
    dual_lattice_basis,
    integral_pairings,
    classify_pairs,
    weyl_invariant,
    is_elliptic
)
from vee_systems.catalog import CATALOG, CatalogEntry, catalog, catalog_names, parse_name

__all__ = [
    'VSystem',
    'PlaneSlice',
    'SliceMember',
    'SecondMomentResult',
    'QuarticResult',
    'PoleViolation',
    'LatticeResult',
    'second_moment',
    'quartic_check',
    'plane_decomposition',
    'pole_conditions',
    'power_sums',
    'plane_well_distributed',
    'lattice_check',
    'dual_lattice_basis',
    'integral_pairings',
    'classify_pairs',
    'weyl_invariant',
    'is_elliptic',
    'CATALOG',
    'CatalogEntry',
    'catalog',
    'catalog_names',
    'parse_name'
]
