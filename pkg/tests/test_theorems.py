"""Identity checks and falsification, including exact-rational replication."""

import math
from fractions import Fraction

import numpy as np
import pytest

from oapoly import (
    CompletePartition,
    HomogeneousPolynomial,
    LatticeVector,
    PositiveVector,
    PreconditionError,
    check_cross_terms,
    check_eta_disjoint,
    check_geos_lemma,
    check_gm,
    check_hm_identity,
    check_rmp,
    check_schur_bounds,
    check_wgm_identity,
    falsify,
    make_diagonal,
    verify_all,
    verify_claim,
)
from oapoly.reports import VerificationReport
from oapoly.sampling import diagonal_polynomial, positive_tuple, sparse_polynomial


def pv(*entries):
    return PositiveVector(entries)


def square_of_sum():
    return HomogeneousPolynomial(2, 2, 1, {(0, 0): [1.0], (0, 1): [1.0], (1, 1): [1.0]})


class TestRmp:
    def test_pythagorean_case(self):
        P = make_diagonal([1.0], 2)
        rep = check_rmp(P, [pv(3.0), pv(4.0)])
        assert rep.passed and rep.max_residual <= 1e-15

    def test_all_zero(self):
        P = make_diagonal([1.0, 2.0], 3)
        rep = check_rmp(P, [pv(0, 0), pv(0, 0)])
        assert rep.passed

    def test_random_diagonal(self):
        rng = np.random.default_rng(0)
        P = make_diagonal([1.0, 2.0], 3)
        for _ in range(50):
            rep = check_rmp(P, positive_tuple(rng, int(rng.integers(2, 5)), 2))
            assert rep.passed, rep

    def test_needs_two_vectors(self):
        with pytest.raises(PreconditionError):
            check_rmp(make_diagonal([1.0], 2), [pv(1.0)])


class TestGm:
    def test_two_args(self):
        P = make_diagonal([1.0], 2)
        rep = check_gm(P, [pv(1.0), pv(9.0)])
        assert rep.passed  # both sides 9

    def test_diagonal_restriction(self):
        P = make_diagonal([1.0, -2.0], 3)
        f = pv(0.7, 2.5)
        rep = check_gm(P, [f, f, f])
        assert rep.passed

    def test_spec_example_pairs(self):
        P = make_diagonal([1.0, 1.0], 2)
        # oracle: (sqrt(1*4))^2 + (sqrt(2*8))^2 = 4 + 16 = 20 on both sides
        rep = check_gm(P, [pv(1, 2), pv(4, 8)])
        assert rep.passed
        lhs = P(PositiveVector([math.sqrt(1 * 4), math.sqrt(2 * 8)]))
        assert lhs[0] == pytest.approx(20.0, rel=1e-12)


class TestSchur:
    def test_basic(self):
        rep = check_schur_bounds([pv(1.0), pv(3.0)])
        assert rep.passed
        # oracle values: min 1, harmonic 1.5, s*min 2
        assert 1.0 <= 1.5 <= 2.0

    def test_all_equal(self):
        f = pv(0.25, 9.0)
        for s in (1, 2, 5):
            rep = check_schur_bounds([f] * s)
            assert rep.passed, rep

    def test_disjoint_pair_hits_lower_bound(self):
        rep = check_schur_bounds([pv(1, 0), pv(0, 1)])
        assert rep.passed

    def test_exact_rational_zero_slack(self):
        fs = [
            PositiveVector.exact([Fraction(3, 7), Fraction(1, 2)]),
            PositiveVector.exact([Fraction(5, 3), Fraction(1, 9)]),
            PositiveVector.exact([Fraction(2, 1), Fraction(4, 5)]),
        ]
        rep = check_schur_bounds(fs)
        assert rep.passed and rep.max_residual == 0.0 and rep.tolerance == 0.0


class TestEtaDisjoint:
    def test_unit_pair(self):
        rep = check_eta_disjoint([pv(1, 0), pv(0, 1)])
        assert rep.passed and rep.max_residual == 0.0

    def test_three_vectors_coordinatewise_zero(self):
        rep = check_eta_disjoint([pv(1, 0, 2), pv(0, 3, 0), pv(5, 5, 5)])
        assert rep.passed

    def test_zero_vectors(self):
        rep = check_eta_disjoint([pv(0, 0), pv(0, 0)])
        assert rep.passed

    def test_precondition_reported(self):
        with pytest.raises(PreconditionError):
            check_eta_disjoint([pv(1, 1), pv(1, 2)])


class TestHmIdentity:
    def test_worked_two_arg_case(self):
        # independent scalar oracle for the worked case
        f1, f2 = (1.0, 2.0), (3.0, 6.0)
        eta = tuple(2 / (1 / a + 1 / b) for a, b in zip(f1, f2))
        assert eta == (1.5, 3.0)
        pair = lambda u, v: sum(x * y for x, y in zip(u, v))
        rhs = 0.5 * (pair(eta, f2) + pair(f1, eta))
        assert rhs == pytest.approx(pair(f1, f2), rel=1e-15)  # 15 both sides

        P = make_diagonal([1.0, 1.0], 2)
        rep = check_hm_identity(P, [pv(*f1), pv(*f2)])
        assert rep.passed and rep.max_residual <= 1e-12

    def test_fixed_point_tuple(self):
        P = make_diagonal([2.0, -1.0, 0.5], 4)
        f = pv(0.25, 3.0, 11.0)
        rep = check_hm_identity(P, [f, f, f, f])
        assert rep.passed

    def test_scalar_three_arg_case(self):
        # oracle: eta(1,2,4) = 12/7; leave-one-out product sum 8+4+2 = 14;
        # (12/7)*14 = 24 = 3*8
        P = make_diagonal([1.0], 3)
        rep = check_hm_identity(P, [pv(1.0), pv(2.0), pv(4.0)])
        assert rep.passed
        assert (12 / 7) * 14 == pytest.approx(3 * 8, rel=1e-15)

    def test_exact_rational_replication(self):
        P = HomogeneousPolynomial(
            2, 2, 1, {(0, 0): [Fraction(1)], (1, 1): [Fraction(1)]}
        )
        fs = [PositiveVector.exact([1, 2]), PositiveVector.exact([3, 6])]
        rep = check_hm_identity(P, fs)
        assert rep.passed and rep.max_residual == 0.0

    def test_degree_one_rejected(self):
        with pytest.raises(PreconditionError):
            check_hm_identity(make_diagonal([1.0], 1), [pv(1.0)])

    def test_non_additive_polynomial_fails(self):
        rep = check_hm_identity(square_of_sum(), [pv(1, 0), pv(0, 1)])
        assert not rep.passed and rep.counterexample is not None


class TestGeosLemma:
    def test_even_pair_is_plain_geometric_mean(self):
        cp = CompletePartition((1, 1), 2)
        rep = check_geos_lemma(cp, [pv(2.0, 5.0), pv(8.0, 0.2)])
        assert rep.passed

    def test_sixteen_one_one(self):
        cp = CompletePartition((2, 1, 1), 4)
        rep = check_geos_lemma(cp, [pv(16.0), pv(1.0), pv(1.0)])
        assert rep.passed
        # oracle: 16^(1/2)*1*1 = 4 = (16*16*1*1)^(1/4)
        assert (16 * 16 * 1 * 1) ** 0.25 == pytest.approx(16 ** 0.5, rel=1e-15)

    def test_every_partition_of_six(self):
        rng = np.random.default_rng(1)
        from oapoly import enumerate_complete

        for parts in enumerate_complete(6):
            cp = CompletePartition(parts, 6)
            rep = check_geos_lemma(cp, positive_tuple(rng, len(parts), 3))
            assert rep.passed and rep.max_residual <= 1e-12


class TestWgmIdentity:
    def test_reduces_to_gm(self):
        P = make_diagonal([1.0], 2)
        cp = CompletePartition((1, 1), 2)
        rep = check_wgm_identity(P, cp, [pv(1.0), pv(9.0)])
        assert rep.passed

    def test_fixed_point(self):
        P = make_diagonal([1.0, 1.0], 4)
        cp = CompletePartition((2, 1, 1), 4)
        f = pv(0.5, 7.0)
        rep = check_wgm_identity(P, cp, [f, f, f])
        assert rep.passed

    def test_spec_example(self):
        # oracle: coordinatewise c_i * f1_i^2 * f2_i * f3_i on both sides
        P = make_diagonal([1.0, 1.0], 4)
        cp = CompletePartition((2, 1, 1), 4)
        f1, f2, f3 = pv(2, 1), pv(1, 3), pv(4, 1)
        expected = (2**2) * 1 * 4 + (1**2) * 3 * 1
        rep = check_wgm_identity(P, cp, [f1, f2, f3])
        assert rep.passed
        assert P.multilinear(f1, f1, f2, f3)[0] == pytest.approx(expected, rel=1e-12)

    def test_degree_mismatch_rejected(self):
        P = make_diagonal([1.0], 3)
        cp = CompletePartition((1, 1), 2)
        with pytest.raises(PreconditionError):
            check_wgm_identity(P, cp, [pv(1.0), pv(1.0)])


class TestCrossTerms:
    def test_diagonal_splits(self):
        P = make_diagonal([1.0, 1.0], 2)
        rep = check_cross_terms(P, pv(1, 0), pv(0, 2))
        assert rep.passed and rep.max_residual == 0.0

    def test_square_of_sum_fails(self):
        rep = check_cross_terms(square_of_sum(), pv(1, 0), pv(0, 1))
        assert not rep.passed
        assert rep.max_residual == pytest.approx(1.0)  # the (0,1) tensor entry

    def test_zero_second_argument(self):
        P = make_diagonal([1.0, -1.0, 2.0], 3)
        rep = check_cross_terms(P, pv(1, 2, 3), pv(0, 0, 0))
        assert rep.passed

    def test_needs_disjoint_pair(self):
        with pytest.raises(PreconditionError):
            check_cross_terms(square_of_sum(), pv(1, 1), pv(1, 0))

    def test_binomial_reconstruction_for_mixed_polynomials(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            P = sparse_polynomial(rng, 3, 4, 1, mixed_terms=2, mixed_mass=0.4)
            mask = rng.integers(0, 2, 4).astype(bool)
            f = PositiveVector(np.where(mask, rng.uniform(0.1, 3, 4), 0.0))
            g = PositiveVector(np.where(mask, 0.0, rng.uniform(0.1, 3, 4)))
            rep = check_cross_terms(P, f, g)
            # reconstruction always holds; only the mixed bound may fail
            assert rep.passed or rep.counterexample["binomial_residual"] <= 1e-9


class TestFalsify:
    def test_square_of_sum_wgm_unit_witness(self):
        rep = falsify(square_of_sum(), "WGM", budget=1000, seed=5)
        assert rep.kind == "falsify" and rep.passed and not rep.inconclusive
        w = rep.counterexample
        assert w["source"] == "structured"
        assert w["residual"] == pytest.approx(1.0)

    def test_square_of_sum_hm_unit_witness(self):
        rep = falsify(square_of_sum(), "HM", budget=1000, seed=5)
        assert rep.passed
        assert rep.counterexample["residual"] == pytest.approx(1.0)

    def test_diagonal_raises_precondition(self):
        with pytest.raises(PreconditionError):
            falsify(make_diagonal([1.0, 2.0], 2), "HM", budget=100, seed=0)

    def test_structured_family_catches_pair_mixed_terms(self):
        # nonzero (i, j) mixed key: the two-coordinate family must witness
        rng = np.random.default_rng(6)
        for s in (2, 3, 4):
            P = HomogeneousPolynomial(
                s, 3, 1, {(0,) * s: [1.0], (1,) * s: [0.5], (0,) * (s - 1) + (2,): [0.3]}
            )
            for claim in ("HM", "WGM", "GM", "RMP", "CROSS_TERMS"):
                rep = falsify(P, claim, budget=2000, seed=int(rng.integers(10**6)))
                assert rep.passed, (s, claim)
                assert rep.counterexample["source"] == "structured", (s, claim)

    def test_three_index_mixed_term_found_by_random_search(self):
        # key {0,1,2} is invisible to two-coordinate inputs; random sampling finds it
        P = HomogeneousPolynomial(3, 3, 1, {(0, 1, 2): [1.0], (0, 0, 0): [1.0]})
        rep = falsify(P, "HM", budget=5000, seed=1)
        assert rep.passed
        assert rep.counterexample["source"] == "random"

    def test_inconclusive_on_tiny_budget(self):
        P = HomogeneousPolynomial(3, 3, 1, {(0, 1, 2): [1.0], (0, 0, 0): [1.0]})
        rep = falsify(P, "HM", budget=2, seed=1)
        assert not rep.passed and rep.inconclusive
        assert rep.trials == 2

    def test_unsupported_claim(self):
        with pytest.raises(ValueError):
            falsify(square_of_sum(), "SCHUR", budget=10, seed=0)


class TestSweeps:
    def test_equivalence_triangle_gm_vs_all_ones_wgm(self):
        rng = np.random.default_rng(7)
        for s in (2, 3, 4):
            P = diagonal_polynomial(rng, s, 3, 2)
            cp = CompletePartition((1,) * s, s)
            for _ in range(25):
                fs = positive_tuple(rng, s, 3)
                gm_rep = check_gm(P, fs)
                wgm_rep = check_wgm_identity(P, cp, fs)
                assert gm_rep.passed and wgm_rep.passed

    def test_verify_claim_deterministic(self):
        a = verify_claim("HM", s=3, n=3, trials=25, seed=42)
        b = verify_claim("HM", s=3, n=3, trials=25, seed=42)
        assert a == b
        assert a.passed and a.trials == 25

    def test_verify_all_passes(self):
        reports = verify_all(s=3, n=4, d=2, trials=20, seed=11)
        assert [r.claim_id for r in reports] == [
            "RMP", "GM", "SCHUR", "ORTHO", "HM", "GEOS", "WGM", "CROSS_TERMS",
        ]
        assert all(r.passed for r in reports)

    def test_user_poly_failure_detected(self):
        rep = verify_claim("HM", s=2, n=2, trials=10, seed=3, poly=square_of_sum())
        assert not rep.passed and rep.counterexample is not None


class TestExactReplication:
    """Rational-valued worked examples re-derived with Fractions, zero residual."""

    def test_schur_one_three(self):
        fs = [PositiveVector.exact([1]), PositiveVector.exact([3])]
        rep = check_schur_bounds(fs)
        assert rep.passed and rep.max_residual == 0.0
        # min 1 <= 3/2 <= 2 = s*min, exactly
        from oapoly import harmonic_mean

        assert harmonic_mean(fs).entries == (Fraction(3, 2),)

    def test_eta_disjoint_three_vectors(self):
        fs = [
            PositiveVector.exact([1, 0, 2]),
            PositiveVector.exact([0, 3, 0]),
            PositiveVector.exact([5, 5, 5]),
        ]
        rep = check_eta_disjoint(fs)
        assert rep.passed and rep.max_residual == 0.0

    def test_hm_identity_scalar_one_two_four(self):
        P = HomogeneousPolynomial(3, 1, 1, {(0, 0, 0): [Fraction(1)]})
        fs = [PositiveVector.exact([x]) for x in (1, 2, 4)]
        rep = check_hm_identity(P, fs)
        assert rep.passed and rep.max_residual == 0.0
        # both sides equal 24 = 3 * 8: (12/7) * (8+4+2) = 24 exactly
        assert Fraction(12, 7) * (8 + 4 + 2) == 24

    def test_cross_terms_diagonal(self):
        P = HomogeneousPolynomial(
            2, 2, 1, {(0, 0): [Fraction(1)], (1, 1): [Fraction(1)]}
        )
        rep = check_cross_terms(
            P, PositiveVector.exact([1, 0]), PositiveVector.exact([0, 2])
        )
        assert rep.passed and rep.max_residual == 0.0

    def test_falsify_worked_case_sides_exact(self):
        # P(f) = (f_1 + f_2)^2 on the unit disjoint pair: the substitution
        # identity's sides are 2 * form(f, g) = 2 and 0, exactly
        P = HomogeneousPolynomial(
            2, 2, 1,
            {(0, 0): [Fraction(1)], (0, 1): [Fraction(1)], (1, 1): [Fraction(1)]},
        )
        f = PositiveVector.exact([1, 0])
        g = PositiveVector.exact([0, 1])
        from oapoly import harmonic_mean

        eta = harmonic_mean([f, g])
        assert eta.entries == (Fraction(0), Fraction(0))
        lhs = P.multilinear(f, g) * 2
        rhs = P.multilinear(eta, g) + P.multilinear(f, eta)
        assert lhs[0] == Fraction(2) and rhs[0] == Fraction(0)
        rep = check_hm_identity(P, [f, g])
        assert not rep.passed and rep.max_residual == 1.0


class TestReportInvariants:
    def test_check_invariant_enforced(self):
        with pytest.raises(ValueError):
            VerificationReport("HM", 1, 0.5, 1e-9, passed=True)
        with pytest.raises(ValueError):
            VerificationReport("HM", 1, 0.0, 1e-9, passed=False)

    def test_falsify_needs_witness_to_pass(self):
        with pytest.raises(ValueError):
            VerificationReport("HM", 1, 2.0, 1e-6, passed=True, kind="falsify")

    def test_round_trip_to_dict(self):
        rep = check_schur_bounds([pv(1.0), pv(3.0)])
        payload = rep.to_dict()
        assert payload["claim_id"] == "SCHUR" and payload["passed"] is True
