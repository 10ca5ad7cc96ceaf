import numpy as np
import pytest

from models.data_models import ModularParameter
from models.errors import DomainError, LatticePointError
from root_systems import RationalVector
from special_functions import eisenstein
from tests.test_vee_systems import roots_only
from vee_systems import catalog, dual_lattice_basis
from wdvv import (
    ModuliPoint,
    Prepotential,
    a1_equation_residual,
    a1_tilde_check,
    associators,
    associators_expanded,
    c_tensor,
    check_boundedness,
    check_modularity,
    check_periodicity,
    rational_limit,
    sample_points,
    trig_limit,
)

WDVV_TOL = 1e-9
E_SERIES_TOL = 1e-7
SEED = 20240101

SYSTEMS = [
    ("A1_4", {"nu": "1/2"}),
    ("A2", {}),
    ("B2", {}),
    ("G2", {"h": "0"}),
    ("G2", {"h": "2"}),
    ("AN", {"N": 3}),
    ("BN", {"N": 2}),
    ("F4", {"h": "1"}),
]


def prepotential(name, params=None, corrected=None):
    return Prepotential.for_system(catalog(name, params), corrected)


class TestStructureTensor:
    def test_unity_and_symmetry(self):
        """c is totally symmetric and c_0ab is the metric."""
        p = prepotential("B2")
        for pt in sample_points(p.system, 5, SEED):
            tensor = c_tensor(p, pt)
            assert tensor.symmetry_defect() == 0
            assert tensor.unity_defect() == 0
            assert tensor.c[0, 0, tensor.rank + 1] == 1

    def test_correction_adds_e4(self):
        """The corrected c_ttt exceeds the plain one by mu E_4 / 120."""
        system = catalog("A2")
        pt = sample_points(system, 1, SEED)[0]
        plain = c_tensor(Prepotential(system, corrected=False), pt).ttt
        corrected = c_tensor(Prepotential(system, corrected=True), pt).ttt
        mu = Prepotential(system, corrected=True).mu
        assert float(mu) == pytest.approx(10 / 3)
        assert abs(corrected - plain - float(mu) * eisenstein(4, pt.tau.tau) / 120) < 1e-12

    def test_parity(self):
        """c_zzz and c_ttz are odd in z, c_tzz and c_ttt even."""
        p = prepotential("A2")
        pt = sample_points(p.system, 1, SEED)[0]
        mirrored = ModuliPoint.of(pt.u, -pt.z_array, pt.tau.tau)
        before, after = c_tensor(p, pt), c_tensor(p, mirrored)
        assert np.allclose(after.zzz, -before.zzz, rtol=1e-12, atol=1e-12)
        assert np.allclose(after.ttz, -before.ttz, rtol=1e-12, atol=1e-12)
        assert np.allclose(after.tzz, before.tzz, rtol=1e-12, atol=1e-12)
        assert abs(after.ttt - before.ttt) < 1e-12 * max(1.0, abs(before.ttt))

    def test_pole_guard(self):
        """A pairing on the lattice is refused."""
        p = prepotential("A2")
        with pytest.raises(LatticePointError):
            c_tensor(p, ModuliPoint.of(0, [0.0, 0.0], 1.1j))

    def test_wrong_dimension(self):
        with pytest.raises(DomainError):
            c_tensor(prepotential("A2"), ModuliPoint.of(0, [0.1], 1.1j))

    def test_corrected_needs_well_distributed(self):
        system = catalog("B2")
        broken = system.with_multiplicity(system.vectors[0], 5)
        with pytest.raises(DomainError):
            Prepotential(broken, corrected=True)

    def test_correction_follows_h_dual(self):
        assert prepotential("A2").corrected
        assert not prepotential("A1_4", {"nu": "1/2"}).corrected
        assert not prepotential("AN", {"N": 3}).corrected


class TestSampling:
    def test_reproducible(self):
        system = catalog("B2")
        assert sample_points(system, 10, SEED) == sample_points(system, 10, SEED)
        assert sample_points(system, 10, SEED) != sample_points(system, 10, SEED + 1)

    def test_points_lie_in_the_strip(self):
        system = catalog("AN", {"N": 3})
        for pt in sample_points(system, 20, SEED):
            assert pt.in_strip(system)
            assert np.max(np.abs(pt.pairings(system))) <= 0.4 + 1e-12

    def test_modular_image(self):
        """The image point has tau' = -1/tau and z' = z / tau."""
        system = catalog("A2")
        pt = ModuliPoint.of(0.2, [0.1 + 0.05j, -0.07j], 0.3 + 1.2j)
        image = pt.modular_image(system)
        assert image.tau.tau == pytest.approx(-1 / (0.3 + 1.2j))
        assert np.allclose(image.z_array, pt.z_array / (0.3 + 1.2j))

    def test_tau_shift(self):
        assert ModularParameter(tau=0.2 + 1j).shifted().tau == pytest.approx(1.2 + 1j)


class TestAssociators:
    @pytest.mark.parametrize("name, params", SYSTEMS)
    def test_vanish_on_catalog_systems(self, name, params):
        """The (corrected where h != 0) prepotential solves WDVV at 20 seeded points."""
        p = prepotential(name, params)
        worst = max(associators(p, pt).max_abs() for pt in sample_points(p.system, 20, SEED))
        assert worst < WDVV_TOL

    @pytest.mark.parametrize("n", [4, 5])
    def test_higher_an(self, n):
        p = prepotential("AN", {"N": n})
        worst = max(associators(p, pt).max_abs() for pt in sample_points(p.system, 4, SEED))
        assert worst < WDVV_TOL

    def test_e6(self):
        """Rank six systems hold to the relaxed bound."""
        p = prepotential("E6")
        worst = max(associators(p, pt).max_abs() for pt in sample_points(p.system, 3, SEED))
        assert worst < E_SERIES_TOL

    @pytest.mark.parametrize("name, params", [("A2", {}), ("B2", {}), ("AN", {"N": 3}), ("G2", {"h": "1/2"})])
    def test_two_assembly_paths_agree(self, name, params):
        """The bilinear-in-f expansion matches the coordinate assembly from c."""
        p = prepotential(name, params)
        for pt in sample_points(p.system, 5, SEED):
            assert associators(p, pt).difference(associators_expanded(p, pt)) < WDVV_TOL

    def test_uncorrected_a2_leaves_an_e4_multiple(self):
        """Without mu, D1 is E_4 / 36 times the form and D2, D3 still vanish."""
        system = catalog("A2")
        p = Prepotential(system, corrected=False)
        _, _, gram = system.numeric
        for pt in sample_points(system, 10, SEED):
            result = associators(p, pt)
            assert np.max(np.abs(result.d1 - eisenstein(4, pt.tau.tau) / 36 * gram)) < WDVV_TOL
            assert np.max(np.abs(result.d2)) < WDVV_TOL
            assert np.max(np.abs(result.d3)) < WDVV_TOL
            assert result.max_abs() > 1e-3

    def test_roots_alone_do_not_solve(self):
        """A3 roots with constant h fail the quartic condition and WDVV with it."""
        system = roots_only("A", 3, 1)
        p = Prepotential(system, corrected=True)
        pt = sample_points(system, 1, SEED)[0]
        assert associators(p, pt).max_abs() > 1e-6


class TestTransformations:
    @pytest.mark.parametrize("name, params", [("A2", {}), ("B2", {}), ("AN", {"N": 3}), ("A1_4", {"nu": "1/2"})])
    def test_modularity(self, name, params):
        p = prepotential(name, params)
        for pt in sample_points(p.system, 10, SEED):
            report = check_modularity(p, pt)
            assert report.status != "fail", report.details

    def test_modularity_on_the_imaginary_axis(self):
        p = prepotential("A2")
        for y in (0.9, 1.0, 1.3):
            report = check_modularity(p, ModuliPoint.of(0.1, [0.11 + 0.03j, -0.05 + 0.02j], 1j * y))
            assert report.status == "pass", report.details

    def test_modularity_needs_the_quartic_condition(self):
        p = Prepotential(roots_only("A", 3, 1), corrected=True)
        report = check_modularity(p, sample_points(p.system, 1, SEED)[0])
        assert report.status == "fail"
        assert report.details["reason"] == "quartic condition fails"

    def test_periodicity_with_root_difference(self):
        """AN(3) with p = e_1 - e_2 obeys the shift laws."""
        p = prepotential("AN", {"N": 3})
        shift = RationalVector.of(1, -1, 0)
        for pt in sample_points(p.system, 10, SEED):
            report = check_periodicity(p, pt, shift)
            assert report.status != "fail", report.details

    @pytest.mark.parametrize("name, params", [("A2", {}), ("B2", {}), ("BN", {"N": 2})])
    def test_periodicity_with_dual_basis(self, name, params):
        p = prepotential(name, params)
        for shift in dual_lattice_basis(p.system):
            for pt in sample_points(p.system, 3, SEED):
                report = check_periodicity(p, pt, shift)
                assert report.status != "fail", report.details

    def test_non_integral_shift(self):
        p = prepotential("A2")
        with pytest.raises(DomainError):
            check_periodicity(p, sample_points(p.system, 1, SEED)[0], RationalVector.of("1/2", 0))

    def test_boundedness(self):
        """Entries settle as Im tau grows."""
        p = prepotential("A2")
        report = check_boundedness(p, [0.12 + 0.04j, -0.05 + 0.03j])
        assert report.status == "pass", report.details


class TestLimits:
    @pytest.fixture
    def z_points(self):
        def points(system, count=20):
            return [pt.z for pt in sample_points(system, count, SEED)]
        return points

    @pytest.mark.parametrize("name, params", [("A2", {}), ("B2", {}), ("AN", {"N": 3}), ("G2", {"h": "0"})])
    def test_rational(self, name, params, z_points):
        system = catalog(name, params)
        assert rational_limit(system).check(z_points(system)).status == "pass"

    def test_trig_ii_for_a2(self, z_points):
        system = catalog("A2")
        limit = trig_limit(system)
        assert limit.name == "trig_II"
        assert limit.kappa == pytest.approx(3**0.5)
        assert limit.check(z_points(system)).status == "pass"

    @pytest.mark.parametrize("name, params", [("A1_4", {"nu": "1/2"}), ("AN", {"N": 3}), ("BN", {"N": 2})])
    def test_trig_i(self, name, params, z_points):
        system = catalog(name, params)
        limit = trig_limit(system)
        assert limit.name == "trig_I"
        assert limit.check(z_points(system)).status == "pass"

    def test_wrong_branch(self):
        with pytest.raises(DomainError):
            trig_limit(catalog("A2"), "I")
        with pytest.raises(DomainError):
            trig_limit(catalog("AN", {"N": 3}), "II")

    def test_rational_value(self):
        """F = sum h x^2 log x on a rank one system."""
        system = catalog("A1_2")
        z = [0.3 + 0.1j]
        x = 2 * z[0]
        expected = 2 * 0.375 * (x**2 * np.log(x) + x**2 * np.log(-x)) / 2
        assert rational_limit(system).value(z) == pytest.approx(expected)


class TestRankOne:
    @pytest.mark.parametrize("z", [0.1 + 0.05j, 0.2 - 0.1j, -0.15 + 0.12j, 0.23 + 0.02j])
    @pytest.mark.parametrize("tau", [0.1 + 1.1j, -0.3 + 0.9j, 0.4 + 1.6j])
    def test_single_equation(self, z, tau):
        """f(2z) - 4 f(z) solves the rank one equation."""
        assert abs(a1_equation_residual(z, tau)) < WDVV_TOL

    def test_alternative_solution(self):
        """The alternative solution holds with the coefficient of its own metric."""
        report = a1_tilde_check(0.17 + 0.05j, 0.1 + 1.2j)
        assert report.status == "pass"
        assert float(report.details["residual_printed"]) > 1e-6
