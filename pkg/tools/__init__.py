"""
This module contains the verification runners used by the command line.
"""

from tools.verification_tools import (
    RUNNERS,
    combine_reports,
    has_superpotential,
    run_family,
    run_hurwitz_checks,
    run_identity_checks,
    run_limit_checks,
    run_vee_checks,
    run_wdvv_checks,
    superpotential_samples,
    uncorrected_delta1,
    wdvv_tolerance,
    weyl_family
)

__all__ = [
    'RUNNERS',
    'combine_reports',
    'has_superpotential',
    'run_family',
    'run_hurwitz_checks',
    'run_identity_checks',
    'run_limit_checks',
    'run_vee_checks',
    'run_wdvv_checks',
    'superpotential_samples',
    'uncorrected_delta1',
    'wdvv_tolerance',
    'weyl_family'
]
