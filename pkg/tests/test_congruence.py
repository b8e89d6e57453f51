"""Ratio congruences for coefficient sequences and the truncation-ratio
evaluation of unit roots."""

import pytest

from frobcy.catalog import get_entry, sequence_terms_via_recurrence
from frobcy.congruence import (CongruenceReport, OutsideUnitDisk,
                               check_dwork_congruence, dwork_ratio)
from frobcy.diffop import ThetaOperator, solve_series


@pytest.fixture(scope="module")
def apery():
    return sequence_terms_via_recurrence("b", 2000)


@pytest.fixture(scope="module")
def f0_mod7():
    op = get_entry("A*a").operator
    return solve_series(op, 7**4 - 1, p=7, K=4)


@pytest.fixture(scope="module")
def F0_mod7(wedge_of):
    return solve_series(wedge_of("A*a"), 7**4 - 1, p=7, K=4)


# -- congruence sweeps -------------------------------------------------------------


class TestCheckDworkCongruence:
    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_apery_passes_at_5(self, apery, s):
        report = check_dwork_congruence(apery, 5, s, 2000)
        assert report.ok
        assert report.failures == []
        assert report.checked > 0

    def test_binomial_square_passes_at_3(self):
        coeffs = sequence_terms_via_recurrence("A", 2000)
        for s in (1, 2, 3):
            report = check_dwork_congruence(coeffs, 3, s, 2000)
            assert report.ok

    def test_corrupted_sequence_fails_with_a_counterexample(self, apery):
        corrupted = [c * (n + 1) for n, c in enumerate(apery)]
        report = check_dwork_congruence(corrupted, 5, 2, 2000)
        assert not report.ok
        n, got, expected = report.failures[0]
        # the recorded counterexample really is a violated class equality
        ps = 25
        baseline = n % ps
        num = corrupted[baseline] * pow(corrupted[baseline // 5], -1, ps)
        assert expected == num % ps
        assert got == corrupted[n] * pow(corrupted[n // 5], -1, ps) % ps
        assert got != expected

    def test_skips_indices_with_non_unit_denominator(self):
        # binom(6,3)^2 = 400 == 0 (mod 5), so ratios at n = 15..19 have a
        # non-unit denominator at p = 5 and must be skipped, not failed
        coeffs = sequence_terms_via_recurrence("A", 30)
        report = check_dwork_congruence(coeffs, 5, 1, 30)
        assert report.ok
        assert set(range(15, 20)) <= set(report.skipped)

    def test_default_range_caps_at_p4(self):
        coeffs = sequence_terms_via_recurrence("b", 120)
        report = check_dwork_congruence(coeffs, 3, 1)
        assert report.n_max == 81

    def test_range_capped_by_available_coefficients(self, apery):
        report = check_dwork_congruence(apery[:101], 5, 1, 2000)
        assert report.n_max == 100

    def test_invalid_power_rejected(self, apery):
        with pytest.raises(ValueError):
            check_dwork_congruence(apery, 5, 0, 100)

    def test_report_summary_mentions_the_verdict(self, apery):
        good = check_dwork_congruence(apery, 5, 1, 500).summary()
        assert "ok" in good
        bad = check_dwork_congruence(
            [c * (n + 1) for n, c in enumerate(apery[:200])], 5, 1).summary()
        assert "FAILURES" in bad

    def test_ok_is_equivalent_to_no_failures(self):
        report = CongruenceReport(prime=5, power=1, n_max=10)
        assert report.ok
        report.failures.append((6, 1, 2))
        assert not report.ok


# -- truncation ratios -------------------------------------------------------------


class TestDworkRatio:
    def test_worked_example_for_f0(self, f0_mod7):
        r = dwork_ratio(f0_mod7, 2, 7, 4)
        assert (r.residue, r.modulus) == (582, 2401)
        assert r.guaranteed == 4

    def test_worked_example_for_the_wedge_solution(self, F0_mod7):
        r = dwork_ratio(F0_mod7, 2, 7, 4)
        assert (r.residue, r.modulus) == (1101, 2401)

    def test_constant_series_has_ratio_one(self):
        ones = solve_series(ThetaOperator([[0, 1]]), 7**3 - 1)
        for z0 in range(1, 7):
            assert dwork_ratio(ones, z0, 7, 3).residue == 1

    def test_agreement_across_precision_levels(self, f0_mod7):
        # the level-s ratio is the level-(s+1) ratio reduced mod p^s
        for z0 in range(1, 7):
            low = dwork_ratio(f0_mod7, z0, 7, 3)
            high = dwork_ratio(f0_mod7, z0, 7, 4)
            assert high.residue % 343 == low.residue

    def test_outside_unit_disk_at_the_undefined_point(self, F0_mod7):
        # the wedge truncation vanishes mod 7 at z0 = 6: the one "-" cell
        with pytest.raises(OutsideUnitDisk):
            dwork_ratio(F0_mod7, 6, 7, 4)

    def test_f0_is_ordinary_everywhere_at_7(self, f0_mod7):
        values = [dwork_ratio(f0_mod7, z0, 7, 4).residue for z0 in range(1, 7)]
        assert values == [1650, 582, 710, 1691, 1691, 654]

    def test_rejects_invalid_precision(self, f0_mod7):
        with pytest.raises(ValueError):
            dwork_ratio(f0_mod7, 2, 7, 0)

    def test_rejects_out_of_range_point(self, f0_mod7):
        for z0 in (0, 7, -1):
            with pytest.raises(ValueError):
                dwork_ratio(f0_mod7, z0, 7, 4)

    def test_rejects_mismatched_prime(self, f0_mod7):
        with pytest.raises(ValueError):
            dwork_ratio(f0_mod7, 2, 5, 3)

    def test_rejects_insufficient_certified_digits(self, f0_mod7):
        with pytest.raises(ValueError):
            dwork_ratio(f0_mod7, 2, 7, 5)

    def test_rejects_short_series(self):
        op = get_entry("A*a").operator
        short = solve_series(op, 300, p=7, K=4)
        with pytest.raises(ValueError):
            dwork_ratio(short, 2, 7, 4)
