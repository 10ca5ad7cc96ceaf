from fractions import Fraction

import pytest

from models.data_models import VSystemDocument
from models.errors import CatalogError, DomainError, RankDeficiencyError
from root_systems import BilinearForm, RationalVector, build, weyl_generators
from vee_systems import (
    catalog,
    classify_pairs,
    dual_lattice_basis,
    integral_pairings,
    is_elliptic,
    lattice_check,
    parse_name,
    plane_decomposition,
    pole_conditions,
    power_sums,
    quartic_check,
    second_moment,
    weyl_invariant,
    VSystem,
)

GRID = ["0", "1", "2", "-1/2"]

CATALOG_SYSTEMS = (
    [("A1_2", {}), ("A1_4", {"nu": "1/2"}), ("A2", {}), ("B2", {}), ("E6", {}), ("E7", {}), ("E8", {})]
    + [("G2", {"h": h}) for h in GRID]
    + [("F4", {"h": h}) for h in GRID]
    + [("AN", {"N": n}) for n in range(2, 7)]
    + [("BN", {"N": n}) for n in range(2, 7)]
)


def roots_only(family, rank, h):
    """A root system in intrinsic coordinates with a constant multiplicity."""
    system = build(family, rank)
    form = BilinearForm(tuple(tuple(row) for row in system.gram()))
    return VSystem.from_pairs(f"{family}{rank}", form, [(system.coordinates(r), h) for r in system.roots])


def intrinsic_generators(family, rank):
    system = build(family, rank)
    return [system.coordinates(g) for g in weyl_generators(system)]


class TestSecondMoment:
    @pytest.mark.parametrize("name, params, expected", [
        ("A2", {}, Fraction(1)),
        ("E6", {}, Fraction(2)),
        ("E7", {}, Fraction(9, 4)),
        ("E8", {}, Fraction(5, 2)),
        ("B2", {}, Fraction(3, 2)),
        ("A1_2", {}, Fraction(3, 4)),
        ("A1_4", {"nu": "1/2"}, Fraction(0)),
        ("A1_4", {"nu": "2"}, Fraction(3, 4)),
        ("A1_4", {"nu": "8"}, Fraction(15, 16)),
        ("AN", {"N": 4}, Fraction(0)),
        ("BN", {"N": 3}, Fraction(0)),
    ])
    def test_h_dual(self, name, params, expected):
        """The well-distributed scalar matches the tabulated values."""
        result = second_moment(catalog(name, params))
        assert result.passed
        assert result.h_dual == expected

    @pytest.mark.parametrize("name", ["G2", "F4"])
    @pytest.mark.parametrize("h", GRID)
    def test_parameterized_families(self, name, h):
        """G2(h) and F4(h) have h_dual = h."""
        assert second_moment(catalog(name, {"h": h})).h_dual == Fraction(h)

    @pytest.mark.parametrize("name, coxeter", [("A2", 3), ("E6", 12), ("E7", 18), ("E8", 30)])
    def test_single_orbit_ratio_is_the_coxeter_number(self, name, coxeter):
        """h_dual / h_alpha is the dual Coxeter number on single-orbit systems."""
        system = catalog(name)
        assert second_moment(system).h_dual / system.entries[0][1] == coxeter

    def test_non_proportional_moment(self):
        """Dropping the short roots of B2 breaks proportionality."""
        system = build("B", 2)
        long_roots = [(r, 1) for r in system.roots if system.form.norm(r) == 2]
        long_roots.append((RationalVector.of(1, 0), 1))
        long_roots.append((RationalVector.of(-1, 0), 1))
        result = second_moment(VSystem.from_pairs("B2-", system.form, long_roots))
        assert not result.passed
        assert result.h_dual is None


class TestQuartic:
    def test_e6_passes(self):
        assert quartic_check(catalog("E6")).passed

    def test_a3_roots_alone_fail(self):
        """Roots of A3 with constant h are not enough: the quartic condition fails."""
        result = quartic_check(roots_only("A", 3, Fraction(1, 4)))
        assert not result.passed
        assert result.deviation

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_an_with_irregular_orbit(self, n):
        assert quartic_check(catalog("AN", {"N": n})).passed


class TestPlanesAndPoles:
    def test_a2_single_slice(self):
        """In A2 every root not collinear with alpha lies in one slice."""
        system = catalog("A2")
        alpha = system.vectors[0]
        slices = plane_decomposition(system, alpha)
        assert len(slices) == 1
        assert len(slices[0].members) == 4

    def test_slice_members_decompose_exactly(self):
        """beta = a alpha + b alpha_perp for every member of every slice."""
        system = catalog("AN", {"N": 3})
        for alpha, _ in system.representatives():
            for plane in plane_decomposition(system, alpha):
                assert system.form.pair(plane.alpha, plane.alpha_perp) == 0
                for m in plane.members:
                    assert plane.alpha * m.a + plane.alpha_perp * m.b == m.vector

    def test_decomposition_needs_a_member(self):
        with pytest.raises(DomainError):
            plane_decomposition(catalog("A2"), RationalVector.of(5, 7))

    def test_irregular_angle(self):
        """The angle between beta^(i) and beta^(j) has cos = -1/N."""
        n = 4
        system = catalog("AN", {"N": n})
        betas = [v for v, h in system.entries if h == Fraction(-(n + 1), 2)]
        first = betas[0]
        others = [b for b in betas if b not in (first, -first)]
        cosines = {system.form.pair(first, b) / system.form.norm(first) for b in others}
        assert Fraction(-1, n) in cosines

    def test_a1_poles_are_vacuous(self):
        assert pole_conditions(catalog("A1_2")) == []

    def test_perturbed_multiplicity_violates_poles(self):
        """Raising h on one pair of A2 roots leaves a pole in its slice."""
        system = catalog("A2")
        perturbed = system.with_multiplicity(system.vectors[0], Fraction(4, 3))
        violations = pole_conditions(perturbed)
        assert violations
        assert {v.kind for v in violations} == {"scalar", "bivector", "4-tensor"}
        assert "pole_conditions" in is_elliptic(perturbed).details["failed"]

    @pytest.mark.parametrize("name, params", [("A2", {}), ("B2", {}), ("G2", {"h": "0"}), ("AN", {"N": 3}),
                                              ("BN", {"N": 2}), ("F4", {"h": "1"})])
    def test_grouped_sums_agree_with_power_sums(self, name, params):
        """The grouped criterion and the brute-force sums for n = 1..6 agree on catalog systems."""
        system = catalog(name, params)
        assert pole_conditions(system) == []
        for alpha, _ in system.representatives():
            for n in range(1, 7):
                assert all(s == b == t == 0 for s, b, t in power_sums(system, alpha, n))

    def test_power_sums_see_the_perturbation(self):
        system = catalog("A2")
        perturbed = system.with_multiplicity(system.vectors[0], Fraction(4, 3))
        nonzero = [
            triple
            for alpha, _ in perturbed.representatives()
            for triple in power_sums(perturbed, alpha, 1)
            if any(triple)
        ]
        assert nonzero


class TestLattice:
    @pytest.mark.parametrize("name, params", [("AN", {"N": 3}), ("BN", {"N": 3}), ("G2", {"h": "0"}), ("E8", {})])
    def test_dual_basis_pairs_integrally(self, name, params):
        system = catalog(name, params)
        basis = dual_lattice_basis(system)
        assert len(basis) == system.dim
        assert all(integral_pairings(system, p) for p in basis)

    def test_bn_half_vectors(self):
        """Under the doubled form e_1 pairs to one with e_1 / 2."""
        system = catalog("BN", {"N": 2})
        e1 = RationalVector.of(1, 0)
        assert system.form.pair(e1, RationalVector.of(Fraction(1, 2), 0)) == 1
        assert integral_pairings(system, e1)

    def test_rank_deficiency(self):
        """A single pair of vectors in two dimensions has no full dual lattice."""
        system = VSystem.from_pairs("line", BilinearForm.euclidean(2),
                                    [(RationalVector.of(1, 0), 1), (RationalVector.of(-1, 0), 1)])
        result = lattice_check(system)
        assert not result.passed
        assert result.achieved_rank == 1
        with pytest.raises(RankDeficiencyError):
            dual_lattice_basis(system)


class TestIsElliptic:
    @pytest.mark.parametrize("name, params", CATALOG_SYSTEMS)
    def test_catalog_systems_pass(self, name, params):
        """Every catalog system is an elliptic vee-system, decided exactly."""
        report = is_elliptic(catalog(name, params))
        assert report.status == "pass", report.details.get("reason")
        assert report.details["failed"] == []

    def test_report_carries_h_dual(self):
        assert is_elliptic(catalog("E7")).details["h_dual"] == "9/4"
        assert is_elliptic(catalog("F4", {"h": "2"})).details["h_dual"] == "2"

    def test_a3_roots_fail_at_quartic(self):
        report = is_elliptic(roots_only("A", 3, Fraction(1, 4)))
        assert report.status == "fail"
        assert "quartic" in report.details["failed"]


class TestClassification:
    def test_root_system_slices_are_type_a(self):
        for name, params in [("E8", {}), ("G2", {"h": "0"})]:
            system = catalog(name, params)
            tags = {tag for _, tag in classify_pairs(system, system.vectors[0])}
            assert tags == {"TypeA"}

    def test_an_irregular_slices_pair_up(self):
        """Through beta^(i) every slice pairs off in Type A or Type B."""
        n = 3
        system = catalog("AN", {"N": n})
        beta = next(v for v, h in system.entries if h == Fraction(-(n + 1), 2))
        tags = [tag for _, tag in classify_pairs(system, beta)]
        assert "other" not in tags
        assert any(tag in ("TypeB", "mixed") for tag in tags)


class TestCatalog:
    @pytest.mark.parametrize("name, rank", [("A2", 2), ("B2", 2), ("E6", 6), ("E7", 7), ("E8", 8)])
    def test_weyl_invariance(self, name, rank):
        """Multiplicities are constant on Weyl orbits."""
        family = "A" if name == "A2" else name[0] if name == "B2" else name
        system = catalog(name)
        assert weyl_invariant(system, intrinsic_generators(family, rank if family in ("A", "B") else None)) == []

    def test_an_weyl_invariance(self):
        system = catalog("AN", {"N": 4})
        assert weyl_invariant(system, intrinsic_generators("A", 4)) == []

    def test_bn_short_multiplicity(self):
        """The shortest vectors of BN carry h = -2N."""
        system = catalog("BN", {"N": 3})
        shortest = min(system.form.norm(v) for v in system.vectors)
        assert {h for v, h in system.entries if system.form.norm(v) == shortest} == {Fraction(-6)}

    @pytest.mark.parametrize("text, expected", [
        ("G2(h=0)", ("G2", {"h": "0"})),
        ("AN(3)", ("AN", {"N": "3"})),
        ("A2", ("A2", {})),
        ("A1_4(nu=1/2)", ("A1_4", {"nu": "1/2"})),
    ])
    def test_parse_name(self, text, expected):
        assert parse_name(text) == expected

    def test_call_syntax_and_params_agree(self):
        assert catalog("G2(h=1/3)") == catalog("G2", {"h": Fraction(1, 3)})
        assert catalog("AN(3)").name == "AN(3)"

    @pytest.mark.parametrize("name, params", [
        ("Z9", {}),
        ("G2", {}),
        ("F4", {"h": "abc"}),
        ("A1_4", {"nu": "3"}),
        ("A1_4", {"nu": "-2"}),
        ("AN", {"N": "1"}),
        ("AN", {"N": "5/2"}),
        ("BN", {"N": "0"}),
        ("A2(3)", {}),
    ])
    def test_catalog_errors(self, name, params):
        with pytest.raises(CatalogError):
            catalog(name, params)

    def test_document_round_trip(self):
        """A system survives its JSON document with exact rationals."""
        system = catalog("BN", {"N": 2})
        text = system.to_document().model_dump_json()
        rebuilt = VSystem.from_document(VSystemDocument.model_validate_json(text))
        assert rebuilt == system
        assert rebuilt.params == {"N": "2"}


class TestVSystemInvariants:
    def test_zero_vector(self):
        with pytest.raises(DomainError):
            VSystem.from_pairs("zero", BilinearForm.euclidean(1), [(RationalVector.of(0), 1)])

    def test_negation_closure(self):
        with pytest.raises(DomainError):
            VSystem.from_pairs("half", BilinearForm.euclidean(1), [(RationalVector.of(1), 1)])

    def test_negative_needs_equal_multiplicity(self):
        with pytest.raises(DomainError):
            VSystem.from_pairs("skew", BilinearForm.euclidean(1),
                               [(RationalVector.of(1), 1), (RationalVector.of(-1), 2)])

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            VSystem.from_pairs("dim", BilinearForm.euclidean(2),
                               [(RationalVector.of(1), 1), (RationalVector.of(-1), 1)])
