"""
This module contains the theta and f identities hidden in the vanishing associators.
"""

from identities.theta_identities import (
    RANK2_GROUPS,
    RANK2_K,
    fs_theta,
    fs_f_form,
    rank2_identity,
    a2_identity,
    theta_ratio_crosscheck
)

__all__ = [
    'RANK2_GROUPS',
    'RANK2_K',
    'fs_theta',
    'fs_f_form',
    'rank2_identity',
    'a2_identity',
    'theta_ratio_crosscheck'
]
