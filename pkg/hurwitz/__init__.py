"""
This module contains the A_N and B_N superpotentials, their residue formulas and the Jacobian check.
"""

from hurwitz.superpotential import (
    Superpotential,
    lambda_eval,
    dlog_lambda,
    moduli_log_derivative,
    u_log_derivative
)
from hurwitz.residues import (
    CriticalPoint,
    critical_points,
    critical_values_distinct,
    residue_pairing,
    residue_cstar,
    residue_tensors,
    closed_form_system,
    compare_closed_form
)
from hurwitz.jacobian import JacobianCandidate, dual_coxeter_number, jacobian_transform_check

__all__ = [
    'Superpotential',
    'lambda_eval',
    'dlog_lambda',
    'moduli_log_derivative',
    'u_log_derivative',
    'CriticalPoint',
    'critical_points',
    'critical_values_distinct',
    'residue_pairing',
    'residue_cstar',
    'residue_tensors',
    'closed_form_system',
    'compare_closed_form',
    'JacobianCandidate',
    'dual_coxeter_number',
    'jacobian_transform_check'
]
