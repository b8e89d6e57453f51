"""Theta-form operators: structure checks, series solving, monic conversion."""

from fractions import Fraction

import pytest

from frobcy.catalog import get_entry
from frobcy.diffop import (MonicForm, NonIntegralSolution, PrecisionExhausted,
                           ThetaOperator, TruncatedSeries, check_cy4,
                           check_cy5, check_mum, leading_symbol, solve_series,
                           stirling_table, symbol_roots_mod_p, to_monic)
from frobcy.polyrat import RatPoly
from frobcy.wedge import wedge_square

AA = get_entry("A*a").operator

F0_HEAD = [1, 8, 360, 22400, 1695400, 143011008]
BIG_F0_HEAD = [1, 44, 3652, 337712, 33909700, 3567877424]


def geometric_op() -> ThetaOperator:
    """theta^4 - z (theta+1)^4, whose normalized solution is 1/(1-z)."""
    return ThetaOperator([[0, 0, 0, 0, 1], [-1, -4, -6, -4, -1]])


# -- structure ---------------------------------------------------------------------


def test_content_and_trailing_rows_are_normalized():
    op = ThetaOperator([[0, 0, 2], [2, 4], [0]])
    assert op.coeffs == ((0, 0, 1), (1, 2, 0))
    assert op.z_degree == 1
    assert op.theta_order == 2


def test_zero_operator_rejected():
    with pytest.raises(ValueError):
        ThetaOperator([[0], [0, 0]])


def test_equality_and_hash_use_normalized_coefficients():
    a = ThetaOperator([[0, 0, 1]], name="x")
    b = ThetaOperator([[0, 0, 3]], name="y")
    assert a == b
    assert hash(a) == hash(b)


def test_json_roundtrip():
    op = get_entry("B*d").operator
    again = ThetaOperator.from_json(op.to_json())
    assert again == op
    assert again.name == op.name
    assert again.aesz == op.aesz


def test_json_rejects_inconsistent_order():
    import json
    data = json.loads(AA.to_json())
    data["theta_order"] = 3
    with pytest.raises(ValueError):
        ThetaOperator.from_json(json.dumps(data))


def test_check_mum():
    assert check_mum(AA)
    assert check_mum(wedge_square(AA))
    assert not check_mum(ThetaOperator([[0, 0, 0, 1, 1], [1, 1]]))


def test_leading_symbol_of_the_first_operator():
    assert leading_symbol(AA) == RatPoly((1, -112, -2048))
    assert leading_symbol(ThetaOperator([[0, 0, 0, 0, 1]])) == RatPoly((1,))


def test_symbol_roots_mod_p():
    assert symbol_roots_mod_p(AA, 7) == [3, 4]
    assert symbol_roots_mod_p(AA, 3) == [2]
    assert symbol_roots_mod_p(get_entry("A*b").operator, 7) == []


def test_symbol_nonzero_at_origin_for_all_catalog_operators():
    from frobcy.catalog import catalog
    for entry in catalog():
        assert leading_symbol(entry.operator)[0] != 0


# -- Stirling conversion -------------------------------------------------------------


def test_stirling_fourth_row():
    assert stirling_table(4)[4] == [0, 1, 7, 6, 1]


def test_stirling_rows_reproduce_falling_factorials():
    # theta^k x^m = m^k x^m must equal sum_j T[k][j] m(m-1)...(m-j+1) x^m.
    T = stirling_table(6)
    for k in range(7):
        for m in range(9):
            total = 0
            for j, c in enumerate(T[k]):
                ff = 1
                for i in range(j):
                    ff *= m - i
                total += c * ff
            assert total == m**k


def test_to_monic_theta_squared():
    m = to_monic(ThetaOperator([[0, 0, 1]]))
    assert m.order == 2
    assert m.a[1].num == RatPoly((1,)) and m.a[1].den == RatPoly((0, 1))
    assert m.a[0].is_zero()


def test_monic_form_annihilates_the_solution():
    # Apply D^4 + a3 D^3 + ... + a0 to the truncated solution as a Laurent
    # series with exact coefficients; everything must cancel.
    from frobcy.wedge import _Laurent
    N = 40
    m = to_monic(AA)
    coeffs = [Fraction(c) for c in solve_series(AA, N).coeffs]
    prec = N + 1
    ys = [_Laurent.from_series(coeffs, prec)]
    for _ in range(4):
        ys.append(ys[-1].derivative())
    acc = ys[4]
    for j in range(4):
        acc = acc + _Laurent.from_ratfun(m.a[j], prec) * ys[j]
    assert acc.is_zero_up_to(N - 8)


# -- series solving ----------------------------------------------------------------


def test_first_solution_coefficients():
    assert solve_series(AA, 5).coeffs == F0_HEAD


def test_wedge_solution_coefficients():
    assert solve_series(wedge_square(AA), 5).coeffs == BIG_F0_HEAD


def test_geometric_series():
    assert solve_series(geometric_op(), 10).coeffs == [1] * 11


def test_solution_satisfies_the_recurrence():
    N = 50
    series = solve_series(AA, N)
    d = AA.z_degree
    for n in range(N + 1):
        acc = 0
        for i in range(min(n, d) + 1):
            poly = AA.theta_poly(i)
            val = 0
            for c in reversed(poly):
                val = val * (n - i) + c
            acc += val * series.coeffs[n - i]
        assert acc == 0


def test_non_mum_operator_rejected():
    with pytest.raises(ValueError):
        solve_series(ThetaOperator([[0, 1, 1], [1]]), 5)


def test_non_integral_solution_detected():
    # theta^2 - z has c_n = c_{n-1} / n^2, which leaves Z at n = 2.
    with pytest.raises(NonIntegralSolution):
        solve_series(ThetaOperator([[0, 0, 1], [-1]]), 5)


def test_exact_mode_storage_reduction_matches_full_integers():
    full = solve_series(AA, 60)
    reduced = solve_series(AA, 60, p=7, K=3)
    assert reduced.prime == 7 and reduced.cap == 3 and reduced.guaranteed == 3
    assert reduced.coeffs == [c % 7**3 for c in full.coeffs]


# -- modular mode ------------------------------------------------------------------


def test_modular_mode_agrees_while_precision_lasts():
    # Losses at n = 7, 14, ..., 49 cost 4 v_7(n) digits each; K = 30 leaves a
    # certified tail that must agree with the exact route.
    N, K = 48, 30
    exact = solve_series(AA, N)
    modular = solve_series(AA, N, p=7, K=K, mode="modular")
    expected_guarantee = K - 4 * sum(1 for n in range(1, N + 1) if n % 7 == 0)
    assert modular.guaranteed == expected_guarantee
    m = 7**modular.guaranteed
    for c_exact, c_mod in zip(exact.coeffs, modular.coeffs):
        assert c_exact % m == c_mod % m


def test_modular_mode_exhausts_at_small_guard():
    # Honest worst-case tracking: each division by P0(n) with 7 | n costs
    # four digits, so a guard of 10 cannot reach n = 500.
    with pytest.raises(PrecisionExhausted):
        solve_series(AA, 500, p=7, K=10, mode="modular")


def test_modular_mode_with_generous_guard_reaches_n_500():
    N = 500
    loss = 0
    for n in range(1, N + 1):
        m = n
        while m % 7 == 0:
            loss += 4
            m //= 7
    K = loss + 4
    modular = solve_series(AA, N, p=7, K=K, mode="modular")
    assert modular.guaranteed == 4
    exact = solve_series(AA, N, p=7, K=K)
    m = 7**modular.guaranteed
    assert [c % m for c in exact.coeffs] == [c % m for c in modular.coeffs]


# -- truncation semantics ------------------------------------------------------------


def test_truncate_keeps_n_plus_one_coefficients():
    s = solve_series(AA, 10)
    t = s.truncate(4)
    assert t.order == 4
    assert t.coeffs == F0_HEAD[:5]
    with pytest.raises(ValueError):
        s.truncate(11)


def test_normalization_required():
    with pytest.raises(ValueError):
        TruncatedSeries([2, 1])


def test_evaluate_mod_is_horner():
    s = TruncatedSeries([1, 2, 3])
    assert s.evaluate_mod(5, 97) == (1 + 2 * 5 + 3 * 25) % 97


# -- self-duality conditions ---------------------------------------------------------


def test_cy4_holds_for_the_catalog_and_fails_generically():
    assert check_cy4(AA)
    bad = ThetaOperator([[0, 0, 0, 0, 1], [0, -1, -3, -3, -1]])  # -z theta (theta+1)^3
    assert not check_cy4(bad)
    with pytest.raises(ValueError):
        check_cy4(wedge_square(AA))


def test_cy5_holds_for_the_wedge_and_fails_generically():
    assert check_cy5(wedge_square(AA))
    # theta^5 - z (theta+1)^3 (theta+2)^2 is not self-dual.
    bad = ThetaOperator([[0, 0, 0, 0, 0, 1], [-4, -16, -25, -19, -7, -1]])
    assert not check_cy5(bad)
    with pytest.raises(ValueError):
        check_cy5(AA)


def test_cy5_accepts_a_degenerate_but_self_dual_operator():
    # theta^5 - z (theta+1)^5 composes as theta^5 (1 - z); conjugating by
    # z/(1-z) shows it is anti-self-adjoint, so the condition must hold even
    # though the operator is degenerate.
    degenerate = ThetaOperator([[0, 0, 0, 0, 0, 1], [-1, -5, -10, -10, -5, -1]])
    assert check_cy5(degenerate)
