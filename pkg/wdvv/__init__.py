"""
This module contains the elliptic prepotential, its associators and their transformation laws.
"""

from wdvv.prepotential import POLE_GUARD, ModuliPoint, Prepotential, StructureTensor, c_tensor, sample_points
from wdvv.associators import Associators, associators, associators_expanded, from_structure
from wdvv.transformations import (
    check_modularity,
    check_periodicity,
    boundedness_sweep,
    check_boundedness
)
from wdvv.limits import (
    LimitPrepotential,
    RationalLimit,
    TrigLimitI,
    TrigLimitII,
    associativity_residual,
    rational_limit,
    trig_limit
)
from wdvv.a1 import a1_derivatives, a1_equation_residual, a1_tilde_check, tilde_derivatives

__all__ = [
    'POLE_GUARD',
    'ModuliPoint',
    'Prepotential',
    'StructureTensor',
    'c_tensor',
    'sample_points',
    'Associators',
    'associators',
    'associators_expanded',
    'from_structure',
    'check_modularity',
    'check_periodicity',
    'boundedness_sweep',
    'check_boundedness',
    'LimitPrepotential',
    'RationalLimit',
    'TrigLimitI',
    'TrigLimitII',
    'associativity_residual',
    'rational_limit',
    'trig_limit',
    'a1_derivatives',
    'a1_equation_residual',
    'a1_tilde_check',
    'tilde_derivatives'
]
