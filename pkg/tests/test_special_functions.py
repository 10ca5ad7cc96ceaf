import cmath
import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.data_models import EllipticArg, ModularParameter, SeriesParams
from models.errors import ConvergenceStripError, DomainError, LatticePointError, SeriesTruncationError
from special_functions import (
    DERIVATIVE_INDEX,
    bernoulli,
    bernoulli_poly,
    coerce_tau,
    dedekind_eta,
    eisenstein,
    eta_log_derivative,
    f30_small_z,
    f_third,
    f_value,
    f_value_series,
    inversion_value,
    lattice_distance,
    li3_one_tau3,
    polylog,
    reduce_to_strip,
    shift_third_derivatives,
    theta1,
    theta1_dtau,
    theta1_prime_zero,
    theta1_ratios,
    third_derivatives,
    zeta3,
)
from utils.series_utils import complex_stencil, mixed_stencil, richardson_derivative, sum_series

TOL = 1e-11
FD_TOL = 1e-6
TWO_PI_I = 2j * math.pi

taus = st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.9, 1.5))
small_z = st.builds(complex, st.floats(0.05, 0.35), st.floats(-0.3, 0.3))


def close(a, b, tol=TOL):
    return abs(a - b) <= tol * max(1.0, abs(b))


def arg(z, tau):
    return EllipticArg(z=complex(z), tau=ModularParameter(tau=complex(tau)))


def modular_image(f, z, tau):
    """f^(3,0), f^(2,1), f^(1,2), f^(0,3) at (z/tau, -1/tau) from their values f at (z, tau)."""
    f30, f21, f12, f03 = f
    return [
        tau * f30 - z,
        tau**2 * f21 + z * tau * f30 - z**2 / 2,
        tau**3 * f12 + 2 * z * tau**2 * f21 + z**2 * tau * f30 - z**3 / 3,
        tau**4 * f03 + 3 * z * tau**3 * f12 + 3 * z**2 * tau**2 * f21 + z**3 * tau * f30 - z**4 / 4,
    ]


class TestBernoulli:
    @pytest.mark.parametrize("n, expected", [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (4, Fraction(-1, 30)),
        (6, Fraction(1, 42)),
        (12, Fraction(-691, 2730)),
    ])
    def test_known_values(self, n, expected):
        """Bernoulli numbers match the x/(e^x - 1) convention."""
        assert bernoulli(n) == expected

    def test_odd_indices_vanish(self):
        """B_n is zero for odd n above one."""
        assert all(bernoulli(n) == 0 for n in range(3, 40, 2))

    def test_polynomial_at_half(self):
        """B_2(1/2) = -1/12 and B_3(1/2) = 0 exactly."""
        assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
        assert bernoulli_poly(3, Fraction(1, 2)) == 0

    def test_negative_index_rejected(self):
        """A negative index raises DomainError."""
        with pytest.raises(DomainError):
            bernoulli(-1)


class TestPolylog:
    @pytest.mark.parametrize("z", [0.3 + 0.2j, -0.5, 0.6j, 0.9 - 0.3j, 2 + 1j, -3.0, -1 + 4j])
    def test_matches_mpmath(self, z):
        """Li_3 agrees with mpmath on the principal branch inside and outside the unit disc."""
        expected = complex(mpmath.polylog(3, mpmath.mpc(complex(z).real, complex(z).imag)))
        assert close(polylog(3, z), expected)

    @pytest.mark.parametrize("z", [2 + 1j, -3.0, 0.4 + 2j, -0.5 - 0.5j])
    def test_inversion_formula(self, z):
        """Li_3(z) - Li_3(1/z) equals the Bernoulli polynomial expression."""
        z = complex(z)
        lhs = mpmath.polylog(3, mpmath.mpc(z.real, z.imag)) - mpmath.polylog(3, 1 / mpmath.mpc(z.real, z.imag))
        assert close(inversion_value(3, z), complex(lhs))

    @pytest.mark.parametrize("x", [Fraction(3, 10), Fraction(1, 20), Fraction(77, 100)])
    def test_inversion_on_the_unit_circle(self, x):
        """Li_3(e^(2 pi i x)) - Li_3(e^(-2 pi i x)) = -(2 pi i)^3 B_3(x) / 6 for 0 < x < 1."""
        w = cmath.exp(TWO_PI_I * float(x))
        residual = polylog(3, w) - polylog(3, w.conjugate()) + TWO_PI_I**3 * float(bernoulli_poly(3, x)) / 6
        assert abs(residual) < TOL

    def test_zeta3(self):
        """Li_3(1) is Apery's constant."""
        assert polylog(3, 1) == pytest.approx(1.2020569031595942, abs=1e-15)
        assert zeta3() == pytest.approx(1.2020569031595942, abs=1e-15)

    @pytest.mark.parametrize("n, z", [(1, 1), (3, 2.5), (0, 0.5)])
    def test_invalid_arguments(self, n, z):
        """Li_1(1), points of the cut and non-positive orders raise DomainError."""
        with pytest.raises(DomainError):
            polylog(n, z)


class TestModularForms:
    def test_tau_outside_upper_half_plane(self):
        """coerce_tau and ModularParameter refuse Im tau <= 0."""
        with pytest.raises(DomainError):
            coerce_tau(1 - 0.5j)
        with pytest.raises(ValueError):
            ModularParameter(tau=0.3 + 0j)

    def test_eta_log_derivative_is_e2(self, tau_samples):
        """eta'/eta = (2 pi i / 24) E_2."""
        for tau in tau_samples:
            assert close(eta_log_derivative(tau), TWO_PI_I / 24 * eisenstein(2, tau))

    @given(taus)
    @settings(max_examples=50, deadline=None)
    def test_e2_anomaly(self, tau):
        """tau^-2 E_2(-1/tau) - E_2(tau) = 12 / (2 pi i tau)."""
        assert close(eisenstein(2, -1 / tau) / tau**2 - eisenstein(2, tau), 12 / (TWO_PI_I * tau))

    @pytest.mark.parametrize("k", [4, 6, 8])
    def test_eisenstein_weight(self, k):
        """E_k(-1/tau) = tau^k E_k(tau) for k >= 4."""
        for tau in (0.1 + 1.1j, -0.4 + 0.9j, 0.25 + 1.4j):
            assert close(eisenstein(k, -1 / tau), tau**k * eisenstein(k, tau))

    @given(taus)
    @settings(max_examples=50, deadline=None)
    def test_eta_modular_law(self, tau):
        """eta(-1/tau) = sqrt(tau / i) eta(tau) on the principal root."""
        assert close(dedekind_eta(-1 / tau), cmath.sqrt(tau / 1j) * dedekind_eta(tau))

    def test_odd_eisenstein_rejected(self):
        """Odd weights raise DomainError."""
        with pytest.raises(DomainError):
            eisenstein(3, 1j)

    def test_weight_beyond_double_precision(self):
        """Divisor sums too large for a float raise DomainError."""
        assert np.isfinite(eisenstein(100, 1.1j))
        with pytest.raises(DomainError):
            eisenstein(400, 1.1j)

    def test_li3_one_third_tau_derivative(self, tau_samples):
        """The third tau-derivative of (2 pi i)^-3 Li_3(1, q) is E_4 / 120."""
        for tau in tau_samples:
            assert close(li3_one_tau3(tau), eisenstein(4, tau) / 120)


class TestTheta:
    @given(small_z, taus)
    @settings(max_examples=50, deadline=None)
    def test_heat_equation(self, z, tau):
        """d_z^2 theta_1 = 4 pi i d_tau theta_1."""
        assert close(theta1(z, tau, derivative=2), 4j * math.pi * theta1_dtau(z, tau))

    @given(small_z, taus)
    @settings(max_examples=30, deadline=None)
    def test_parity_and_period(self, z, tau):
        """theta_1 is odd and changes sign under z -> z + 1."""
        value = theta1(z, tau)
        assert close(theta1(-z, tau), -value)
        assert close(theta1(z + 1, tau), -value)

    def test_derivative_at_zero_is_eta_cubed(self, tau_samples):
        """theta_1'(0) = 2 pi eta^3."""
        for tau in tau_samples:
            assert close(theta1_prime_zero(tau), 2 * math.pi * dedekind_eta(tau) ** 3)

    def test_ratios_refuse_lattice_points(self):
        """theta_1'/theta_1 raises LatticePointError where theta_1 vanishes."""
        with pytest.raises(LatticePointError):
            theta1_ratios(np.array([0.0, 0.2]), 1j)


class TestThirdDerivatives:
    def test_f30_is_log_derivative_of_theta(self, z_tau_samples):
        """f^(3,0) + (1/2 pi i) theta_1'/theta_1 = 0."""
        for z, tau in z_tau_samples:
            rho, _ = theta1_ratios(z, tau)
            f30 = third_derivatives(z, tau)[0]
            assert close(f30 + rho / TWO_PI_I, 0)

    @pytest.mark.parametrize("z", [0.05 + 0.02j, 0.12 - 0.08j, 0.2 + 0.1j, -0.15 + 0.17j])
    def test_laurent_expansion(self, z):
        """The small-z Laurent series reproduces f^(3,0)."""
        tau = 0.1 + 1.2j
        assert close(f30_small_z(z, tau), complex(third_derivatives(z, tau)[0]), 1e-10)

    def test_laurent_expansion_is_capped(self):
        """Near the radius of convergence the capped expansion reports truncation."""
        with pytest.raises(SeriesTruncationError) as info:
            f30_small_z(0.95, 0.1 + 1.2j)
        assert info.value.max_terms == 50

    @pytest.mark.parametrize("m, n", [(3, 0), (2, 1), (1, 2), (0, 3)])
    def test_modular_laws(self, m, n, z_tau_samples):
        """Third derivatives at (z/tau, -1/tau) follow from those at (z, tau)."""
        index = DERIVATIVE_INDEX[(m, n)]
        for z, tau in z_tau_samples:
            image = third_derivatives(z / tau, -1 / tau)[index]
            assert close(image, modular_image(third_derivatives(z, tau), z, tau)[index])

    def test_parity(self, z_tau_samples):
        """f^(3,0) and f^(1,2) are odd in z, f^(2,1) and f^(0,3) even."""
        signs = np.array([-1, 1, -1, 1])
        for z, tau in z_tau_samples:
            assert np.allclose(third_derivatives(-z, tau), signs * third_derivatives(z, tau), rtol=TOL, atol=TOL)

    @pytest.mark.parametrize("m, n", [(3, 0), (2, 1), (1, 2), (0, 3)])
    def test_finite_difference_oracle(self, m, n, z_tau_samples):
        """Complex stencils on f agree with the q-series derivatives at seeded points."""
        # stencil circles stay clear of the pole at 0 and the cut of Li_3(w) on Re z = 0
        points = [(z, tau) for z, tau in z_tau_samples if abs(z.real) >= 0.2][:4]
        assert len(points) == 4
        for z, tau in points:
            stencil = mixed_stencil(lambda s, t: f_value(arg(s, t)), z, tau, m, n, h=0.02, points=8)
            assert abs(stencil - f_third(m, n, arg(z, tau))) < FD_TOL

    def test_two_series_for_f_agree(self, z_tau_samples):
        """The defining sum and the resummed series give the same f."""
        for z, tau in z_tau_samples[:20]:
            assert close(f_value(arg(z, tau)), f_value_series(arg(z, tau)))

    def test_shift_laws(self):
        """Values at z + tau follow from those at z by the exact shift laws."""
        tau = 0.1 + 1.0j
        z = 0.2 - 0.6j
        before = third_derivatives(z, tau, reduce=False)
        after = third_derivatives(z + tau, tau, reduce=False)
        assert np.allclose(shift_third_derivatives(before, 1), after, rtol=0, atol=1e-10)

    def test_reduction_to_strip(self):
        """reduce_to_strip recovers the integer shifts."""
        tau = -0.3 + 1.3j
        z = 0.1 + 0.2j
        reduced, n, m = reduce_to_strip(z + 2 * tau + 3, tau)
        assert (n, m) == (2, 3)
        assert abs(reduced - z) < 1e-12

    def test_reduced_evaluation_outside_the_strip(self):
        """reduce=True serves arguments beyond the strip, reduce=False refuses them."""
        tau = 0.2 + 0.9j
        z = 0.15 + 0.1j
        far = z + 2 * tau
        expected = shift_third_derivatives(third_derivatives(z, tau), 2)
        assert np.allclose(third_derivatives(far, tau), expected, rtol=0, atol=1e-10)
        with pytest.raises(ConvergenceStripError):
            third_derivatives(far, tau, reduce=False)

    def test_lattice_point(self):
        """f^(3,0) has a pole at the lattice while f^(2,1) stays finite there."""
        tau = 1.1j
        with pytest.raises(LatticePointError):
            third_derivatives(0.0, tau)
        assert np.isfinite(f_third(2, 1, arg(0, tau)))
        assert lattice_distance(1 + tau, tau) < 1e-12

    def test_invalid_order(self):
        """f_third needs m + n = 3."""
        with pytest.raises(DomainError):
            f_third(2, 2, arg(0.1, 1j))


class TestSeriesUtils:
    def test_truncation_error(self):
        """A series that never settles raises SeriesTruncationError."""
        with pytest.raises(SeriesTruncationError):
            sum_series(itertools.repeat(1.0), "ones", SeriesParams(max_terms=10))

    def test_finite_series_is_exact(self):
        """A finite iterable is summed completely."""
        assert sum_series([1.0, 2.0, 3.0], "finite") == 6.0

    def test_complex_stencil(self):
        """The circle stencil differentiates exp."""
        assert abs(complex_stencil(cmath.exp, 0.3, 2, 0.01, points=8) - cmath.exp(0.3)) < 1e-9

    def test_richardson(self):
        """Richardson refined central differences recover cos(0)."""
        assert abs(richardson_derivative(math.sin, 1e-3) - 1) < 1e-12

    def test_series_params_validation(self):
        """max_terms must be positive."""
        with pytest.raises(ValueError):
            SeriesParams(max_terms=0)
