"""Brute-force oracle values, frozen, against the order polynomial formulas."""

from oracle_helpers import brute_sl_count, brute_su2_over_gf4_count

from paravol.diagram import FiniteTypeLabel
from paravol.reductive import order_polynomial

# determinant-1 matrix counts over prime fields, computed by brute_sl_count
FROZEN_SL_COUNTS = {
    (2, 2): 6,
    (2, 3): 24,
    (3, 2): 168,
    (3, 3): 5616,
}


def test_brute_force_sl_counts_are_frozen_values():
    for (n, q), expected in FROZEN_SL_COUNTS.items():
        assert brute_sl_count(n, q) == expected


def test_order_polynomials_match_sl_brute_force():
    a1 = order_polynomial(FiniteTypeLabel("A", 1))
    a2 = order_polynomial(FiniteTypeLabel("A", 2))
    for q in (2, 3):
        assert a1(q) == FROZEN_SL_COUNTS[(2, q)]
        assert a2(q) == FROZEN_SL_COUNTS[(3, q)]


def test_unitary_order_polynomial_matches_su2_brute_force():
    # the rank-1 unitary group over GF(4)/GF(2) has 6 elements
    count = brute_su2_over_gf4_count()
    assert count == 6
    assert order_polynomial(FiniteTypeLabel("A", 1, "unitary"))(2) == count


def test_unitary_orders_match_known_group_orders():
    su3 = order_polynomial(FiniteTypeLabel("A", 2, "unitary"))
    su4 = order_polynomial(FiniteTypeLabel("A", 3, "unitary"))
    assert su3(2) == 216
    assert su3(3) == 6048
    assert su4(2) == 25920


def test_split_orders_match_known_group_orders():
    cases = {
        ("A", 1): {4: 60, 5: 120, 7: 336, 8: 504, 9: 720},
        ("A", 2): {4: 60480},
        ("B", 2): {2: 720, 3: 51840},
        ("G", 2): {2: 12096},
        ("D", 4): {2: 174182400},
    }
    for (fam, rank), values in cases.items():
        poly = order_polynomial(FiniteTypeLabel(fam, rank))
        for q, expected in values.items():
            assert poly(q) == expected
