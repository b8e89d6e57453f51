"""Quartic assembly from unit roots, precision policy, archimedean checks,
and the elliptic one-dimensional baseline."""

import pytest

from frobcy.catalog import get_entry
from frobcy.congruence import OutsideUnitDisk
from frobcy.diffop import solve_series
from frobcy.frobenius import (LiftOutOfBound, SingularFiber,
                              assemble_frobenius, frobenius_from_operator,
                              frobenius_quartic, legendre_frobenius,
                              legendre_precision, legendre_trace_bruteforce,
                              legendre_unit_root, required_precision,
                              unit_roots, weil_verify)
from frobcy.padic import PadicNumber

PRIMES = (3, 5, 7, 11, 13, 17)


@pytest.fixture(scope="module")
def aa_series(wedge_of):
    """{(p, s): (f0, F0)} for A*a at the precisions the tests need."""
    op = get_entry("A*a").operator
    wop = wedge_of("A*a")
    out = {}
    for p, s in [(3, 5), (5, 4), (7, 4), (7, 5)]:
        N = p**s - 1
        out[p, s] = (solve_series(op, N, p=p, K=s),
                     solve_series(wop, N, p=p, K=s))
    return out


# -- precision policy --------------------------------------------------------------


class TestRequiredPrecision:
    def test_smooth_table(self):
        assert {p: required_precision(p) for p in PRIMES} == \
            {3: 5, 5: 4, 7: 4, 11: 4, 13: 3, 17: 3}

    def test_singular_table(self):
        assert {p: required_precision(p, want_singular=True) for p in PRIMES} \
            == {3: 5, 5: 4, 7: 4, 11: 4, 13: 4, 17: 4}

    def test_boundary_arithmetic(self):
        # 13^3 = 2197 > 2 * 6 * 169 = 2028, 7^3 = 343 < 2 * 294 = 588,
        # 3^4 = 81 < 2 * 54 = 108 <= 3^5
        assert required_precision(13) == 3
        assert required_precision(7) == 4
        assert required_precision(3) == 5

    @pytest.mark.parametrize("want_singular", [False, True])
    @pytest.mark.parametrize("p", PRIMES)
    def test_minimality(self, p, want_singular):
        def enough(s: int) -> bool:
            ps = p**s
            if ps * ps <= 64 * p**3 or ps <= 12 * p * p:
                return False
            if want_singular:
                rem = ps - 4 * p * p
                if rem <= 0 or rem * rem <= 16 * (1 + p) ** 2 * p**3:
                    return False
            return True

        s = required_precision(p, want_singular)
        assert enough(s) and not enough(s - 1)

    def test_rejects_even_or_tiny_primes(self):
        with pytest.raises(ValueError):
            required_precision(2)


# -- unit roots --------------------------------------------------------------------


class TestUnitRoots:
    def test_worked_example(self, aa_series):
        f0, F0 = aa_series[7, 4]
        r1, rh = unit_roots(f0, F0, 2, 7, 4)
        assert (r1.residue, r1.modulus) == (582, 2401)
        assert (rh.residue, rh.modulus) == (1101, 2401)

    def test_undefined_points(self, aa_series):
        # the whole p = 3 row is undefined, and z0 = 3 at p = 5
        for p, s, z0 in [(3, 5, 1), (3, 5, 2), (5, 4, 3)]:
            f0, F0 = aa_series[p, s]
            with pytest.raises(OutsideUnitDisk):
                unit_roots(f0, F0, z0, p, s)


# -- quartic assembly --------------------------------------------------------------


class TestAssembleFrobenius:
    def test_worked_example(self, aa_series):
        r1, rh = unit_roots(*aa_series[7, 4], 2, 7, 4)
        assert assemble_frobenius(r1, rh, 7) == (-8, 2)

    def test_worked_example_quartic(self):
        assert frobenius_quartic(-8, 2, 7) == [1, -8, 14, -2744, 117649]

    def test_starred_cell_at_5(self, aa_series):
        r1, rh = unit_roots(*aa_series[5, 4], 4, 5, 4)
        assert assemble_frobenius(r1, rh, 5, at_singular_fiber=True) == (32, 62)

    def test_split_bound_needed_at_7(self, aa_series):
        # (80, 290): |a| = 80 exceeds 4 * 7^(3/2) ~ 74, but fits the split
        # bound p^2 + p + 2 p^(3/2) ~ 93
        r1, rh = unit_roots(*aa_series[7, 4], 4, 7, 4)
        assert assemble_frobenius(r1, rh, 7, at_singular_fiber=True) == (80, 290)
        with pytest.raises(LiftOutOfBound):
            assemble_frobenius(r1, rh, 7)

    def test_tate_type_roots_evaluate_symbolically(self):
        # r1 = rh = 1 makes the four reciprocal roots 1, p, p^2, p^3
        for p in (3, 5):
            one = PadicNumber(p, 6, 1, 6)
            a, b = assemble_frobenius(one, one, p, check_bounds=False)
            assert a == -(1 + p + p * p + p**3)
            assert b == 1 + p + 2 * p * p + p**3 + p**4

    def test_tate_type_roots_violate_every_bound(self):
        one = PadicNumber(3, 6, 1, 6)
        with pytest.raises(LiftOutOfBound):
            assemble_frobenius(one, one, 3)
        with pytest.raises(LiftOutOfBound):
            assemble_frobenius(one, one, 3, at_singular_fiber=True)

    def test_rejects_prime_mismatch(self, aa_series):
        r1, rh = unit_roots(*aa_series[7, 4], 2, 7, 4)
        with pytest.raises(ValueError):
            assemble_frobenius(r1, rh, 5)

    def test_full_row_at_7(self, aa_series):
        # the printed row: (2,-46) (-8,2) (32,-94)* (80,290)* (10,50)' -
        f0, F0 = aa_series[7, 4]
        row = {}
        for z0 in range(1, 7):
            try:
                row[z0] = assemble_frobenius(
                    *unit_roots(f0, F0, z0, 7, 4), 7, at_singular_fiber=True)
            except OutsideUnitDisk:
                row[z0] = None
        assert row == {1: (2, -46), 2: (-8, 2), 3: (32, -94), 4: (80, 290),
                       5: (10, 50), 6: None}

    def test_stable_under_extra_precision(self, aa_series):
        # recomputing every defined cell one digit deeper changes nothing
        low = aa_series[7, 4]
        high = aa_series[7, 5]
        for z0 in range(1, 7):
            try:
                got_low = assemble_frobenius(
                    *unit_roots(*low, z0, 7, 4), 7, at_singular_fiber=True)
            except OutsideUnitDisk:
                with pytest.raises(OutsideUnitDisk):
                    unit_roots(*high, z0, 7, 5)
                continue
            got_high = assemble_frobenius(
                *unit_roots(*high, z0, 7, 5), 7, at_singular_fiber=True)
            assert got_low == got_high

    def test_palindromic_coefficients(self):
        for a, b, p in [(-8, 2, 7), (6, -6, 5), (32, 62, 5), (2, -46, 7)]:
            c = frobenius_quartic(a, b, p)
            assert c[0] == 1
            assert c[3] == p**3 * c[1]
            assert c[4] == p**6

    def test_convenience_wrapper(self):
        op = get_entry("A*a").operator
        assert frobenius_from_operator(op, 7, 2, 4) == (-8, 2)


# -- archimedean verification -------------------------------------------------------


class TestWeilVerify:
    def test_worked_example(self):
        assert weil_verify(-8, 2, 7)

    def test_zero_coefficients_are_pure(self):
        # 1 + p^6 T^4 has four roots of modulus exactly p^(-3/2)
        assert weil_verify(0, 0, 7)

    def test_tate_type_coefficients_fail(self):
        # reciprocal roots 1, p, p^2, p^3: moduli 1 .. p^(-3) are not pure
        assert not weil_verify(-40, 130, 3)

    def test_reducible_cell_passes(self):
        # (6,-6) at p=5 splits into two quadratics with root modulus 5^(-3/2)
        assert weil_verify(6, -6, 5)

    def test_split_cell_fails(self):
        # (32,62) at p=5 has roots of modulus 1/5 and 1/25: not Weil-pure
        assert not weil_verify(32, 62, 5)

    def test_smooth_cells_at_7(self):
        for a, b in [(2, -46), (-8, 2), (10, 50)]:
            assert weil_verify(a, b, 7)


# -- the elliptic baseline ----------------------------------------------------------


class TestLegendre:
    def test_precision_table(self):
        assert {p: legendre_precision(p) for p in PRIMES} == \
            {3: 2, 5: 2, 7: 2, 11: 2, 13: 2, 17: 1}

    def test_unit_root_at_7(self):
        root = legendre_unit_root(7, 3)
        assert (root.residue, root.modulus, root.guaranteed) == (39, 49, 2)

    def test_trace_at_7_matches_the_point_count(self):
        assert legendre_frobenius(7, 3) == 4
        assert legendre_trace_bruteforce(7, 3) == 4

    def test_degenerate_fibers_raise(self):
        for p, s0 in [(5, 0), (5, 1), (5, 10), (7, 8)]:
            with pytest.raises(SingularFiber):
                legendre_frobenius(p, s0)
            with pytest.raises(SingularFiber):
                legendre_trace_bruteforce(p, s0)

    @pytest.mark.parametrize("p", [7, 13])
    def test_exhaustive_against_the_oracle(self, p):
        for s0 in range(2, p):
            ap = legendre_trace_bruteforce(p, s0)
            if ap % p == 0:
                with pytest.raises(OutsideUnitDisk):
                    legendre_frobenius(p, s0)
            else:
                assert legendre_frobenius(p, s0) == ap

    @pytest.mark.parametrize("p", PRIMES)
    def test_hasse_bound_everywhere(self, p):
        for s0 in range(2, p):
            ap = legendre_trace_bruteforce(p, s0)
            assert ap * ap <= 4 * p

    def test_unit_root_reconstructs_the_trace(self):
        root = legendre_unit_root(13, 5)
        ps = root.modulus
        lifted = (root.residue + 13 * pow(root.residue, -1, ps)) % ps
        lifted -= ps if lifted > ps // 2 else 0
        assert lifted == legendre_frobenius(13, 5)

    def test_supersingular_set_at_3_is_everything(self):
        # x(x-1)(x-2) == x^3 - x over F_3 vanishes identically
        with pytest.raises(OutsideUnitDisk):
            legendre_frobenius(3, 2)
