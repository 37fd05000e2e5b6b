"""Curve arithmetic tests.

Point counts are checked two independent ways (fiber enumeration vs the
trace recurrence), the group law is exercised against its axioms, and the
torsion machinery is validated through explicit order certificates.
"""

import random
from fractions import Fraction

import pytest

from lame2 import GF, trace
from lame2.common import VerificationError
from lame2.weierstrass import (
    CurvePoint,
    WeierstrassCurve,
    curve_invariants,
    extension_order,
    ordinary_with_torsion,
    point_of_exact_order,
    point_order,
    supersingular_order,
    supersingular_trace,
    torsion_basis,
    torsion_field_degree,
    torsion_points,
    transformed_coefficients,
)


# ---------------------------------------------------------------------------
# invariants


def test_invariants_match_char0_oracle():
    # y^2 + y = x^3 over Q: b6 = 4a6 + a3^2 = 1, disc = -27
    inv = curve_invariants(*map(Fraction, (0, 0, 1, 0, 0)))
    assert inv["disc"] == Fraction(-27)
    assert inv["c4"] == 0
    # y^2 = x^3 - x: disc = 64 (2^6), j = 1728
    inv = curve_invariants(*map(Fraction, (0, 0, 0, -1, 0)))
    assert inv["disc"] == Fraction(64)
    c4 = inv["c4"]
    assert c4 ** 3 / inv["disc"] == Fraction(1728)


def test_supersingular_curve_basic():
    E = WeierstrassCurve.supersingular(4)
    assert E.discriminant() == E.ctx.one
    assert E.j_invariant() == E.ctx.zero
    assert E.is_supersingular()


def test_ordinary_curve_basic():
    ctx = GF(4)
    for tbits in range(1, 16):
        t = ctx(tbits)
        E = WeierstrassCurve.ordinary(ctx, t)
        assert E.discriminant() == t * t
        assert E.j_invariant() == 1 / (t * t)
        assert not E.is_supersingular()


def test_singular_rejected():
    ctx = GF(3)
    with pytest.raises(ValueError):
        WeierstrassCurve(ctx, 0, 0, 0, 0, 0)  # y^2 = x^3 is cuspidal
    with pytest.raises(ValueError):
        WeierstrassCurve.ordinary(ctx, 0)


# ---------------------------------------------------------------------------
# group law


def _sample_points(E, rng, k):
    return [E.random_point(rng) for _ in range(k)]


@pytest.mark.parametrize("make", [
    lambda: WeierstrassCurve.supersingular(5),
    lambda: WeierstrassCurve.ordinary(GF(5), 6),
    lambda: WeierstrassCurve.supersingular(8),
    lambda: WeierstrassCurve.ordinary(GF(7), 19),
])
def test_group_axioms(make):
    E = make()
    rng = random.Random(11)
    O = E.infinity()
    pts = _sample_points(E, rng, 12)
    for P in pts:
        assert P + O == P
        assert O + P == P
        assert P + (-P) == O
        assert -(-P) == P
    for P, Q in zip(pts, pts[1:]):
        assert P + Q == Q + P
    for i in range(len(pts) - 2):
        P, Q, R = pts[i], pts[i + 1], pts[i + 2]
        assert (P + Q) + R == P + (Q + R)


def test_scalar_multiplication_consistent():
    E = WeierstrassCurve.supersingular(6)
    rng = random.Random(3)
    P = E.random_point(rng)
    acc = E.infinity()
    for k in range(40):
        assert k * P == acc
        assert (-k) * P == -acc
        acc = acc + P
    assert (7 * (11 * P)) == 77 * P


def test_two_torsion_of_ordinary():
    E = WeierstrassCurve.ordinary(GF(4), 9)
    R = E.point(0, 0)
    assert R == -R
    assert (2 * R).is_infinity()
    # and it is the only affine two-torsion point: h(x) = x vanishes at 0 only
    assert E.fiber_y(E.ctx.zero) == (E.ctx.zero,)


def test_doubling_where_tangent_is_vertical():
    # on the supersingular curve h = 1 never vanishes, so no affine 2-torsion
    E = WeierstrassCurve.supersingular(4)
    for x in E.ctx.elements():
        for y in E.fiber_y(x):
            P = E.point(x, y)
            assert not (2 * P).is_infinity()


# ---------------------------------------------------------------------------
# point counts


def test_supersingular_counts_enumeration_vs_formula():
    # frozen values, then the enumeration cross-check
    frozen = {1: 3, 2: 9, 3: 9, 4: 9, 5: 33, 6: 81, 7: 129, 8: 225, 10: 1089}
    for d, want in frozen.items():
        assert supersingular_order(d) == want
    for d in range(1, 11):
        E = WeierstrassCurve.supersingular(d)
        assert E.count_points() == supersingular_order(d)


def test_supersingular_trace_values():
    assert [supersingular_trace(d) for d in range(0, 9)] == \
        [2, 0, -4, 0, 8, 0, -16, 0, 32]


def test_ordinary_counts_hasse_and_parity():
    for d in range(2, 7):
        ctx = GF(d)
        q = 1 << d
        for tbits in range(1, q):
            E = WeierstrassCurve.ordinary(ctx, ctx(tbits))
            N = E.count_points()
            a = q + 1 - N
            assert a * a <= 4 * q
            assert a % 2 == 1  # ordinary in char 2 means odd trace


def test_fiber_counting_matches_rational_points():
    E = WeierstrassCurve.ordinary(GF(5), 3)
    total = 1
    for x in E.ctx.elements():
        ys = E.fiber_y(x)
        for y in ys:
            assert E.contains(x, y)
        total += len(ys)
    assert total == E.count_points()


# ---------------------------------------------------------------------------
# torsion


def test_torsion_field_degrees_frozen():
    assert {n: torsion_field_degree(n) for n in (3, 5, 7, 9, 11, 13)} == \
        {3: 2, 5: 8, 7: 12, 9: 6, 11: 10, 13: 24}


def test_torsion_degree_consistent_with_group_order():
    for n in (3, 5, 7, 9, 11, 13):
        d = torsion_field_degree(n)
        assert supersingular_order(d) % (n * n) == 0


def test_torsion_basis_certified():
    for n in (3, 5, 9):
        curve, P, Q = torsion_basis(n)
        assert curve.ctx.degree == torsion_field_degree(n)
        for T in (P, Q):
            assert (n * T).is_infinity()
            assert not T.is_infinity()
        pts = torsion_points(curve, P, Q, n, exact=False)
        assert len(set(pts)) == n * n
        exact = torsion_points(curve, P, Q, n, exact=True)
        # the number of points of exact order n in (Z/n)^2
        want = len([1 for a in range(n) for b in range(n)
                    if _exact_order_pair(a, b, n)])
        assert len(exact) == want


def _exact_order_pair(a, b, n):
    # order of (a, b) in (Z/n)^2 is n / gcd(a, b, n)
    from math import gcd
    return gcd(gcd(a, b), n) == 1


def test_exact_order_pair_helper():
    assert _exact_order_pair(1, 0, 9)
    assert _exact_order_pair(3, 1, 9)
    assert not _exact_order_pair(3, 6, 9)
    assert not _exact_order_pair(0, 0, 9)


def test_point_of_exact_order_prime_power():
    curve, P, Q = torsion_basis(9)
    N = supersingular_order(curve.ctx.degree)
    rng = random.Random(7)
    T = point_of_exact_order(curve, N, 9, rng)
    assert (9 * T).is_infinity() and not (3 * T).is_infinity()


def test_ordinary_with_torsion():
    for n in (3, 5, 7, 9):
        curve, P = ordinary_with_torsion(n)
        assert not curve.is_supersingular()
        assert P.order() == n


# ---------------------------------------------------------------------------
# transforms and base change


def test_transform_is_isomorphism():
    rng = random.Random(19)
    ctx = GF(4)
    E = WeierstrassCurve.ordinary(ctx, 7)
    u, r, s, t = ctx(3), ctx(12), ctx(5), ctx(9)
    E2, fwd = E.transform(u, r, s, t)
    u12 = u ** 12
    assert E2.discriminant() * u12 == E.discriminant()
    assert E2.j_invariant() == E.j_invariant()
    pts = _sample_points(E, rng, 8)
    for P in pts:
        assert fwd(P).curve == E2
    for P, Q in zip(pts, pts[1:]):
        assert fwd(P + Q) == fwd(P) + fwd(Q)
    assert fwd(E.infinity()).is_infinity()


def test_transform_char0_table_against_invariants():
    # over Q: scaling (u, 0, 0, 0) must scale disc by u^-12 and fix j
    a = tuple(map(Fraction, (1, -2, 3, -4, 5)))
    inv = curve_invariants(*a)
    for u in (Fraction(2), Fraction(3, 5)):
        b = transformed_coefficients(a, u, Fraction(7), Fraction(-1), Fraction(4))
        inv2 = curve_invariants(*b)
        assert inv2["disc"] == inv["disc"] / u ** 12
        assert inv2["c4"] == inv["c4"] / u ** 4


def test_base_change_preserves_structure():
    E = WeierstrassCurve.supersingular(2)
    big = E.base_change(GF(8))
    assert big.count_points() == supersingular_order(8)
    # wrong-degree target must fail at the embedding layer
    with pytest.raises(ValueError):
        E.base_change(GF(3))
    E4 = E.base_change(GF(4))
    P = E.point(0, 1)
    P4 = E.lift_point(P, GF(4))
    assert P4.curve == E4
    assert P4.order() == P.order()


def test_point_json_roundtrip():
    E = WeierstrassCurve.supersingular(4)
    P = E.point(0, 1)
    rec = P.to_json()
    assert rec["x"] == {"d": 4, "hex": "0"}
    assert rec["y"] == {"d": 4, "hex": "1"}
    assert rec["curve"] == [{"d": 4, "hex": h} for h in "00100"]
    assert E.infinity().to_json() == {"infinity": True}
    assert E.to_json() == {"d": 4, "a": ["0", "0", "1", "0", "0"]}


def test_count_points_formula_method():
    for d in range(1, 9):
        E = WeierstrassCurve.supersingular(d)
        assert E.count_points("supersingular_formula") == E.count_points()
    with pytest.raises(ValueError):
        WeierstrassCurve.ordinary(2, 1).count_points("supersingular_formula")
    with pytest.raises(ValueError):
        WeierstrassCurve.supersingular(2).count_points("schoof")


def test_point_order_function():
    E = WeierstrassCurve.supersingular(2)
    P = E.point(0, 0)
    assert point_order(E, E.infinity()) == 1
    assert point_order(E, P) == 3
    curve, P9, _ = torsion_basis(9)
    assert point_order(curve, P9) == 9
    assert point_order(curve, 3 * P9) == 3
    with pytest.raises(VerificationError):
        point_order(curve, P9, group_order=5)


def test_extension_order_matches_enumeration():
    E = WeierstrassCurve.ordinary(2, 1)  # base field of degree 2, q = 4
    base = E.count_points()
    for k in (2, 3, 4):
        lifted = E.base_change(GF(2 * k))
        assert extension_order(base, 4, k) == lifted.count_points()
    for k in range(1, 9):
        assert extension_order(supersingular_order(1), 2, k) == supersingular_order(k)
