"""Half-power arithmetic, conjugacy of types, symbolic equal-volume search."""

import random
from fractions import Fraction

import pytest

from paravol.diagram import build_local_index
from paravol.errors import ImproperTypeError, InvalidResidueError
from paravol.parahoric import (
    ONE,
    HalfPowerRational,
    conjugate_types,
    factor_ratio,
    find_equal_volume_pairs,
    local_factor,
    pairs_to_json,
)
from paravol.construction import Place


def place(pid, q, p, d):
    return Place(pid, q, p, d)


def test_half_power_folding():
    x = HalfPowerRational.from_parts(1, {"v": (2, 4)})
    assert x == HalfPowerRational(4)  # sqrt(2)^4 = 4
    y = HalfPowerRational.from_parts(1, {"v": (2, 3)})
    assert y.rational == 2 and y.half == (("v", 2),)
    z = HalfPowerRational.from_parts(1, {"v": (2, -1)})
    assert z.rational == Fraction(1, 2) and z.half == (("v", 2),)
    assert HalfPowerRational.from_parts(5, {"v": (3, 0)}) == HalfPowerRational(5)


def test_half_power_multiplication_cancels_in_pairs():
    a = HalfPowerRational.from_parts(1, {"v": (3, 1)})
    assert (a * a) == HalfPowerRational(3)
    b = HalfPowerRational.from_parts(Fraction(1, 2), {"w": (2, 1)})
    ab = a * b
    assert ab.rational == Fraction(1, 2)
    assert ab.half == (("v", 3), ("w", 2))
    assert not ab.is_one


def test_half_power_inverse():
    for parts in ({}, {"v": (2, 1)}, {"v": (5, 3), "w": (2, 1)}):
        x = HalfPowerRational.from_parts(Fraction(7, 9), parts)
        assert (x * x.inverse()).is_one
    assert ONE.is_one


def test_half_power_json():
    x = HalfPowerRational.from_parts(Fraction(7, 3), {"v": (2, 1)})
    assert x.to_json() == {"num": 7, "den": 3, "half_exponents": {"v": 1}}
    assert ONE.to_json() == {"num": 1, "den": 1, "half_exponents": {}}


def test_conjugate_types_examples():
    a4 = build_local_index("split:A4")
    assert conjugate_types(a4, (0, 2), (0, 3))
    assert conjugate_types(a4, (0,), (3,))
    b3 = build_local_index("split:B3")
    assert conjugate_types(b3, (0,), (1,))
    assert not conjugate_types(b3, (0,), (2,))
    assert not conjugate_types(b3, (0,), (3,))
    cb2 = build_local_index("twisted:C-B2")
    assert conjugate_types(cb2, (0,), (2,))
    assert not conjugate_types(cb2, (0,), (1,))


def test_conjugate_types_is_an_equivalence():
    rng = random.Random(83211)
    for label in ("split:A4", "split:B3", "split:D4", "twisted:C-B2"):
        d = build_local_index(label)
        types = d.proper_types()
        for _ in range(50):
            a, b, c = (rng.choice(types) for _ in range(3))
            assert conjugate_types(d, a, a)
            assert conjugate_types(d, a, b) == conjugate_types(d, b, a)
            if conjugate_types(d, a, b) and conjugate_types(d, b, c):
                assert conjugate_types(d, a, c)


def test_conjugate_types_rejects_improper():
    d = build_local_index("split:A2")
    with pytest.raises(ImproperTypeError):
        conjugate_types(d, (0, 1, 2), (0,))


def test_factor_ratio_spec_example():
    a3 = build_local_index("split:A3")
    v = place("v", 2, 2, a3)
    r = factor_ratio(a3, (0, 2), (0, 3), v)
    assert r == HalfPowerRational(Fraction(7, 3))


def test_factor_ratio_cocycle_at_one_place():
    b3 = build_local_index("split:B3")
    v = place("v", 3, 3, b3)
    types = [(), (0,), (2,), (0, 1), (0, 3), (1, 2, 3)]
    for t1 in types:
        assert factor_ratio(b3, t1, t1, v).is_one
        for t2 in types:
            forward = factor_ratio(b3, t1, t2, v)
            assert (forward * factor_ratio(b3, t2, t1, v)).is_one
            for t3 in types:
                chained = forward * factor_ratio(b3, t2, t3, v)
                assert chained == factor_ratio(b3, t1, t3, v)


def test_factor_ratio_rejects_bad_residue():
    a2 = build_local_index("split:A2")

    class FakePlace:
        id = "bad"
        q = 6

    with pytest.raises(InvalidResidueError):
        factor_ratio(a2, (0,), (1,), FakePlace())


def test_local_factor_matches_descriptor():
    b3 = build_local_index("split:B3")
    f = local_factor(b3, (2, 3))
    assert f.dim == 11  # rank-2 component of dimension 10 plus a 1-torus
    assert f.order(2) == 720  # (q-1) * the rank-2 symplectic order, at q=2
    assert f.order(3) == 2 * 51840


def test_find_pairs_a4_empty_a5_contains_spec_pair():
    assert find_equal_volume_pairs(build_local_index("split:A4")) == []
    a5 = [(p[0].vertices, p[1].vertices)
          for p in find_equal_volume_pairs(build_local_index("split:A5"))]
    assert ((0, 2), (0, 3)) in a5


def test_find_pairs_b3_frozen():
    found = [(p[0].vertices, p[1].vertices)
             for p in find_equal_volume_pairs(build_local_index("split:B3"))]
    assert found == [((0,), (2,)), ((0,), (3,)), ((0, 1), (0, 3)), ((2,), (3,))]


def test_find_pairs_twisted():
    for label in ("twisted:C-BC1", "twisted:C-B2"):
        found = [(p[0].vertices, p[1].vertices)
                 for p in find_equal_volume_pairs(build_local_index(label))]
        assert found == [((0,), (1,))]


def test_found_pairs_are_sound():
    from paravol.reductive import quotient_descriptor

    for label in ("split:A5", "split:B3", "split:C3", "split:D4", "split:G2",
                  "twisted:C-B2"):
        d = build_local_index(label)
        pairs = find_equal_volume_pairs(d)
        for t1, t2 in pairs:
            assert not conjugate_types(d, t1, t2)
            d1 = quotient_descriptor(d, t1)
            d2 = quotient_descriptor(d, t2)
            assert d1.dim == d2.dim and d1.order == d2.order


def test_pairs_json_shape():
    d = build_local_index("split:B3")
    payload = pairs_to_json(d, find_equal_volume_pairs(d), q=2)
    assert payload["diagram"] == "split:B3"
    assert payload["q"] == 2
    first = payload["pairs"][0]
    assert first["t1"] == [0] and first["t2"] == [2]
    assert first["dim"] == 5
    assert first["order_at_q"] == 6 * 1  # q(q^2-1)(q-1)^2 at q=2
    assert first["order_coeffs"][first["dim"]] == 1
