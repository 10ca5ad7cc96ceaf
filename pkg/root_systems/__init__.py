"""
This module contains root systems, Weyl reflections and orbits over exact rationals.
"""

from root_systems.vectors import RationalVector, BilinearForm
from root_systems.build import (
    FAMILIES,
    RootSystem,
    build,
    reflect,
    orbit,
    fundamental_weight,
    irregular_orbit,
    weyl_generators,
    roots_by_norm
)

__all__ = [
    'RationalVector',
    'BilinearForm',
    'FAMILIES',
    'RootSystem',
    'build',
    'reflect',
    'orbit',
    'fundamental_weight',
    'irregular_orbit',
    'weyl_generators',
    'roots_by_norm'
]
