"""
This module contains the analytic building blocks: Bernoulli data, polylogarithms,
theta, eta and Eisenstein series, and the elliptic trilogarithm.
"""

from special_functions.bernoulli import bernoulli, bernoulli_poly
from special_functions.polylog import polylog, inversion_value, zeta3
from special_functions.modular import (
    coerce_tau,
    nome,
    divisor_sigma,
    dedekind_eta,
    eta_log_derivative,
    eisenstein
)
from special_functions.theta import (
    theta1,
    theta1_jet,
    theta1_dtau,
    theta1_log_derivatives,
    theta1_ratios,
    theta1_prime_zero,
    theta1_third_ratio
)
from special_functions.trilog import (
    DERIVATIVE_INDEX,
    lattice_distance,
    reduce_to_strip,
    shift_third_derivatives,
    shift_correction,
    third_derivatives,
    f_third,
    f_value,
    f_value_series,
    li3_one_tau3,
    f30_small_z
)

__all__ = [
    'bernoulli',
    'bernoulli_poly',
    'polylog',
    'inversion_value',
    'zeta3',
    'coerce_tau',
    'nome',
    'divisor_sigma',
    'dedekind_eta',
    'eta_log_derivative',
    'eisenstein',
    'theta1',
    'theta1_jet',
    'theta1_dtau',
    'theta1_log_derivatives',
    'theta1_ratios',
    'theta1_prime_zero',
    'theta1_third_ratio',
    'DERIVATIVE_INDEX',
    'lattice_distance',
    'reduce_to_strip',
    'shift_third_derivatives',
    'shift_correction',
    'third_derivatives',
    'f_third',
    'f_value',
    'f_value_series',
    'li3_one_tau3',
    'f30_small_z'
]
