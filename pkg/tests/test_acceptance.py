"""Acceptance gate: one test per advertised capability, one verdict line each.

Every test prints a single "[criterion N] PASS/FAIL" line straight to the
terminal (bypassing capture) with the measured numbers, then asserts.  All
comparisons are exact; timing bounds are wall-clock.
"""

import random
import time
from fractions import Fraction

from lame2 import (
    GF,
    INFINITY,
    HyperellipticCurve,
    Poly,
    Series,
    WeierstrassCurve,
    WeightedPoint,
    aut_orbit,
    cantor_add,
    class_of_point_pair,
    classify_torsion,
    cover_profile,
    curve_invariants,
    degree_count_true,
    discriminant_formula,
    divisor_class_order,
    enumerate_triples,
    eta_paper,
    expected_class_count,
    galois_equivariance_check,
    is_supersingular,
    j_formula,
    lame_count_dividing,
    moduli_census,
    ordinary_torsion_point,
    psi,
    rho,
    tate_normal_form,
    third_point_datum,
    torsion_basis,
    torsion_points,
)
from lame2.funcfield import CurveFunction, local_expand
from lame2.gf2 import poly_roots

SS_ORDERS = (3, 5, 7, 9, 11, 13)
ORDINARY_T = (2, 3, 8)
SMALL_ORDERS = (3, 5, 7)


def say(capsys, line):
    with capsys.disabled():
        print(line, flush=True)


# -- 1: supersingular branch data ---------------------------------------------------


def test_criterion_01_supersingular_ramification(capsys):
    timings = {}
    for n in SS_ORDERS:
        t0 = time.monotonic()
        curve, P, _ = torsion_basis(n)
        rep = cover_profile(P, n)
        timings[n] = time.monotonic() - t0

        assert rep["model"] == "supersingular"
        assert rep["third_point"] == ((n + 1) // 2) * P
        fibers = {("infinity" if v is INFINITY else v.bits): fib
                  for v, fib in rep["profile"].items()}
        zero = fibers[0]
        assert len(zero) == 1 and zero[0][1] == n and zero[0][2] == n - 1
        pole = fibers["infinity"]
        assert len(pole) == 1 and pole[0][0].is_infinity() and pole[0][1] == n
        third = next(fib for k, fib in fibers.items()
                     if k not in (0, "infinity"))
        ramified = [(e, d) for _pt, e, d in third if e > 1]
        assert ramified == [(3, 2)]
        assert rep["index"] == 3 and rep["tame"]
        assert sum(e for _pt, e, _d in third) == n
        assert sum(d for fib in rep["profile"].values()
                   for _pt, _e, d in fib) == 2 * n
        assert timings[n] < 60.0
    assert timings[13] < 120.0
    say(capsys, "[criterion 1] PASS: branch datum (n:n:3,1,...,1) certified "
        "for n in %s; n=13 over GF(2^24) in %.2fs" % (list(SS_ORDERS),
                                                      timings[13]))


# -- 2: ordinary branch data --------------------------------------------------------


def test_criterion_02_ordinary_ramification(capsys):
    ctx4 = GF(4)
    t0 = time.monotonic()
    cases = 0
    for tb in ORDINARY_T:
        t = ctx4(tb)
        for n in SMALL_ORDERS:
            curve, P, _ = ordinary_torsion_point(t, n)
            rep = cover_profile(P, n)
            assert rep["model"] == "ordinary"
            assert rep["index"] == 2
            assert rep["different_exponent"] == 2 and not rep["tame"]
            Q = rep["third_point"]
            assert Q + Q == P
            # Q differs from ((n+1)/2)P by the rational 2-torsion point
            shift = Q + ((n - (n + 1) // 2) * P)
            assert not shift.is_infinity()
            assert (shift + shift).is_infinity()
            cases += 1
    elapsed = time.monotonic() - t0
    assert cases == 9 and elapsed < 60.0
    say(capsys, "[criterion 2] PASS: wild index-2 third point (exponent 2) "
        "for t in {2,3,8} over F16, n in {3,5,7}; 9 covers in %.2fs"
        % elapsed)


# -- 3: the dichotomy, exhaustively -------------------------------------------------


def _ordinary_exact_locus(curve, N, n, P):
    """Every rational exact-order-n point, with a completeness certificate.

    n is prime here.  When the n-part of N is n, or when n does not divide
    q - 1 (so the pairing rules out a second independent generator), the
    n-Sylow is cyclic and <P> is the unique order-n subgroup.  Otherwise the
    Sylow has order n^2 and sampling its image decides cyclic against rank
    two: an order-n^2 element forces cyclic, an independent order-n element
    forces (Z/n)^2.
    """
    v, M = 0, N
    while M % n == 0:
        v += 1
        M //= n
    q = 1 << curve.ctx.degree
    assert v >= 1
    if v == 1 or (q - 1) % n:
        return [k * P for k in range(1, n)]
    assert v == 2
    rng = random.Random(2026)
    ladder = {k * P for k in range(n)}
    for _ in range(500):
        s = M * curve.random_point(rng)
        if s.is_infinity():
            continue
        if not (n * s).is_infinity():
            return [k * P for k in range(1, n)]   # order n^2: cyclic Sylow
        if s not in ladder:
            pts = [a * P + b * s
                   for a in range(n) for b in range(n) if a or b]
            assert len(set(pts)) == n * n - 1
            return pts
    raise AssertionError("Sylow structure undecided after 500 samples")


def test_criterion_03_dichotomy_exhaustive(capsys):
    t0 = time.monotonic()
    ss_swept = 0
    for n in SMALL_ORDERS:
        curve, P, Q = torsion_basis(n)
        pts = torsion_points(curve, P, Q, n, exact=True)
        assert len(pts) == psi(n)
        for T in pts:
            d = third_point_datum(T, n)
            assert d["index"] == 3 and d["tame"]
            assert d["different_exponent"] == 2
            ss_swept += 1

    ctx4 = GF(4)
    ord_swept = 0
    for tb in ORDINARY_T:
        for n in SMALL_ORDERS:
            curve, P, N = ordinary_torsion_point(ctx4(tb), n)
            for T in _ordinary_exact_locus(curve, N, n, P):
                d = third_point_datum(T, n)
                assert d["index"] == 2 and not d["tame"]
                assert not (d["index"] == 3 and d["tame"])
                ord_swept += 1
    elapsed = time.monotonic() - t0
    say(capsys, "[criterion 3] PASS: every supersingular point tame index 3 "
        "(%d points), every ordinary point wild index 2 (%d points), "
        "exhaustive, %.2fs" % (ss_swept, ord_swept, elapsed))


# -- 4: class counts ----------------------------------------------------------------


def test_criterion_04_class_counts(capsys):
    for n, want in ((5, 1), (7, 2), (11, 5), (13, 7)):
        assert (n * n - 1) % 24 == 0 and (n * n - 1) // 24 == want
        assert lame_count_dividing(n) == want
    assert lame_count_dividing(3) == 1
    assert lame_count_dividing(9) == 4
    brute9 = len(classify_torsion(3)) + len(classify_torsion(9))
    assert brute9 == 4

    exact = {n: len(classify_torsion(n)) for n in SS_ORDERS}
    for n in (5, 7, 9, 11, 13):
        assert psi(n) % 24 == 0 and exact[n] == psi(n) // 24
    assert exact[3] == 1   # psi(3)/24 is not integral; the count is 1
    say(capsys, "[criterion 4] PASS: dividing counts %s; exact counts %s "
        "= psi/24 (1 at n=3)" % ([lame_count_dividing(n) for n in SS_ORDERS],
                                 [exact[n] for n in SS_ORDERS]))


# -- 5: quotient classifies orbits ---------------------------------------------------


def test_criterion_05_quotient_orbit_equivalence(capsys):
    swept = 0
    for n in (3, 5, 7, 9):
        curve, P, Q = torsion_basis(n)
        nonzero = [T for T in torsion_points(curve, P, Q, n, exact=False)
                   if not T.is_infinity()]
        assert len(nonzero) == n * n - 1
        groups = {}
        for T in nonzero:
            groups.setdefault(rho(T).bits, []).append(T)
        # fiber == orbit for every fiber gives both directions of the
        # equivalence: distinct fibers cannot meet one orbit
        for members in groups.values():
            assert aut_orbit(members[0]) == set(members)
        swept += len(nonzero)

    frob = galois_equivariance_check(1, samples=1000, seed=0)
    assert frob["passed"] and frob["samples"] >= 1000
    say(capsys, "[criterion 5] PASS: rho fibers = automorphism orbits on all "
        "%d points of E[n], n in {3,5,7,9}; Frobenius equivariance on %d "
        "samples" % (swept, frob["samples"]))


# -- 6: field-of-moduli census --------------------------------------------------------


def test_criterion_06_moduli_census(capsys):
    for d in (1, 2, 3):
        census = moduli_census(d)
        assert census["count"] == 1 << d
        assert census["by_degree"] == census["by_degree_expected"]
    assert sorted(c.order for c in moduli_census(1)["classes"]) == [3, 5]

    for d in (2, 3, 4, 5, 8, 9):
        assert eta_paper(d) == degree_count_true(d)
    flagged = (eta_paper(6), degree_count_true(6))
    assert flagged == (12, 54)
    say(capsys, "[criterion 6] PASS: 2^d classes for d in {1,2,3} with "
        "Moebius per-degree counts; eta matches on prime powers "
        "{2,3,4,5,8,9}; d=6 discrepancy %d vs %d flagged as open question "
        "(not a failure)" % flagged)


# -- 7: characteristic-zero triples ---------------------------------------------------


def test_criterion_07_triple_census(capsys):
    nine = enumerate_triples(9, primitive_only=True)
    assert len(nine) == 9
    assert {(t.a, t.b, t.c) for t in nine} == {
        (1, 1, 7), (1, 2, 6), (1, 3, 5), (1, 4, 4), (1, 5, 3), (1, 6, 2),
        (2, 2, 5), (2, 3, 4), (2, 4, 3)}
    assert sum(1 for t in nine if t.signature == 1) == 3

    t0 = time.monotonic()
    for n in range(5, 100, 2):
        sig1 = enumerate_triples(n, signature=1, primitive_only=True)
        assert psi(n) % 24 == 0 and len(sig1) == psi(n) // 24
        assert len(sig1) == expected_class_count(n)
    assert len(enumerate_triples(3, signature=1, primitive_only=True)) == 1
    assert expected_class_count(3) == 1   # n = 3 carve-out, as in criterion 4
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    say(capsys, "[criterion 7] PASS: degree 9 gives the 9 known triples, 3 "
        "of signature 1; #sig-1(n) = psi(n)/24 for odd 5 <= n <= 99 (1 at "
        "n=3) in %.2fs" % elapsed)


# -- 8: weighted coordinate formulas --------------------------------------------------


def test_criterion_08_formulary_agreement(capsys):
    rng = random.Random(8)
    constant = None
    checked = 0
    zero = Fraction(0)
    while checked < 120:
        a, b, c = (Fraction(rng.randint(-60, 60), rng.randint(1, 12))
                   for _ in range(3))
        if not (a or b or c):
            continue
        p = WeightedPoint(a, b, c)
        inv = curve_invariants(a, b, c, zero, zero)
        disc = discriminant_formula(p)
        if inv["disc"]:
            ratio = disc / inv["disc"]
            if constant is None:
                constant = ratio   # fixed once, on the first nonzero sample
            assert ratio == constant
        else:
            assert disc == 0
        got = j_formula(p)
        want = INFINITY if not inv["disc"] else inv["c4"] ** 3 / inv["disc"]
        assert (got is want) or (got == want)
        checked += 1
    assert constant == 1

    reps = 0
    for n in SS_ORDERS:
        for cls in classify_torsion(n):
            wp = tate_normal_form(cls.representative.curve,
                                  cls.representative)
            j = j_formula(wp)
            assert j is not INFINITY and j.bits == 0
            reps += 1
    assert reps == 19
    say(capsys, "[criterion 8] PASS: %d random rational points match the "
        "standard formulary (j exactly, disc with constant %s); all %d "
        "torsion-class representatives have j = 0" % (checked, constant,
                                                      reps))


# -- 9: hyperelliptic covers -----------------------------------------------------------


def test_criterion_09_hyperelliptic(capsys):
    C1 = HyperellipticCurve(GF(3), 1)
    E = WeierstrassCurve.supersingular(3)
    pts = C1.points()
    assert len(pts) == 9
    for p1 in pts:
        for p2 in pts:
            lhs = cantor_add(C1, C1.point_divisor(p1), C1.point_divisor(p2))
            total = (E.infinity() if p1 is INFINITY else E.point(*p1)) + \
                    (E.infinity() if p2 is INFINITY else E.point(*p2))
            if total.is_infinity():
                assert lhs.is_identity
            else:
                assert lhs == C1.point_divisor((total.x, total.y))

    C2 = HyperellipticCurve(GF(1), 2)
    L2 = C2.lpoly()
    assert L2 == [1, 0, 0, 0, 4]          # L(T) = 4T^4 + 1
    assert C2.jacobian_order() == 5
    zz = (C2.ctx.zero, C2.ctx.zero)
    assert divisor_class_order(C2, class_of_point_pair(C2, zz)) == 5

    certs = {g: is_supersingular(HyperellipticCurve(GF(1), g).lpoly())
             for g in (1, 2, 3)}
    flags = {g: c["supersingular"] for g, c in certs.items()}
    if all(flags.values()):
        say(capsys, "[criterion 9] PASS: genus-1 dictionary exhaustive over "
            "F8; genus-2 data certified; Newton certificates pass for "
            "g in {1,2,3}")
    else:
        bad = {g: [str(s) for s in certs[g]["slopes"]]
               for g, ok in flags.items() if not ok}
        say(capsys, "[criterion 9] FAIL: genus-1 dictionary and genus-2 data "
            "certified, but the Newton certificate rejects %s (slopes %s; "
            "L = %s) -- Y^2+Y=X^7 is genuinely not supersingular"
            % (sorted(bad), bad, {g: certs[g]["lpoly"] for g in bad}))
    assert flags == {1: True, 2: True, 3: True}, (
        "Newton-polygon certificate must pass for g in {1,2,3}; got %r with "
        "slopes %r" % (flags, {g: certs[g]["slopes"] for g in certs}))


# -- 10: randomized property suites ----------------------------------------------------


CASES = 10_000


def _chord(curve, P, Q):
    """The line through P and Q (tangent when equal), as a curve function."""
    ctx = curve.ctx
    if P.x == Q.x and (P.y != Q.y or (P + P).is_infinity()):
        return CurveFunction(curve, Poly(ctx, [P.x.bits, 1]),
                             Poly.zero(ctx), Poly.one(ctx))
    if P == Q:
        lam = (P.x * P.x + curve.a4 + curve.a1 * P.y) \
            / (curve.a1 * P.x + curve.a3)
    else:
        lam = (P.y + Q.y) / (P.x + Q.x)
    nu = P.y + lam * P.x
    return CurveFunction(curve, Poly(ctx, [nu.bits, lam.bits]),
                         Poly.one(ctx), Poly.one(ctx))


def _suite_field_axioms(rng):
    for i in range(CASES):
        ctx = GF(1 + i % 12)
        a, b, c = (ctx.random(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + a == ctx.zero
        if a.bits:
            assert a * a.inverse() == ctx.one
    return CASES


def _suite_group_axioms(rng):
    curves = [WeierstrassCurve.supersingular(d) for d in (1, 2, 3)] + \
             [WeierstrassCurve.ordinary(GF(d), t) for d in (2, 3)
              for t in (1, 2)]
    for i in range(CASES):
        E = curves[i % len(curves)]
        P, Q, R = (E.random_point(rng) for _ in range(3))
        assert P + Q == Q + P
        assert (P + Q) + R == P + (Q + R)
        assert (P + (-P)).is_infinity()
        assert P + E.infinity() == P
    return CASES


def _suite_series_multiplicativity(rng):
    for i in range(CASES):
        ctx = GF(1 + i % 8)
        q = 1 << ctx.degree

        def rand_series():
            lead = ctx(rng.randrange(1, q) if q > 1 else 1)
            tail = [ctx(rng.randrange(q)) for _ in range(4)]
            return Series(ctx, rng.randrange(-4, 5), [lead] + tail)

        s, t, u = rand_series(), rand_series(), rand_series()
        assert (s * t).valuation() == s.valuation() + t.valuation()
        assert (s * t) * u == s * (t * u)
        assert s * (t + u) == s * t + s * u
    return CASES


def _suite_divisor_degree_balance(rng):
    curves = [WeierstrassCurve.supersingular(d) for d in (1, 2, 3)] + \
             [WeierstrassCurve.ordinary(GF(d), t) for d in (2, 3)
              for t in (1, 2)]
    for i in range(CASES):
        E = curves[i % len(curves)]
        P, Q = E.random_point(rng), E.random_point(rng)
        line = _chord(E, P, Q)
        third = -(P + Q)
        zeros = {P, Q} | ({third} if not third.is_infinity() else set())
        deg = line.degree()
        assert deg == (2 if third.is_infinity() else 3)
        norm = line.norm_numerator()
        assert norm.degree == deg
        roots = poly_roots(norm)
        assert sum(m for _r, m in roots) == deg
        assert {r.bits for r, _m in roots} == {pt.x.bits for pt in zeros}
        for pt in zeros:
            assert line.evaluate(pt).bits == 0
        if i % 200 == 0:
            # the only pole is the origin, with order exactly deg
            assert -local_expand(line, INFINITY, 8).valuation() == deg
    return CASES


def test_criterion_10_property_suites(capsys):
    t0 = time.monotonic()
    totals = {}
    for name, suite, seed in (
            ("field axioms", _suite_field_axioms, 101),
            ("group axioms", _suite_group_axioms, 102),
            ("series multiplicativity", _suite_series_multiplicativity, 103),
            ("divisor-degree balance", _suite_divisor_degree_balance, 104)):
        totals[name] = suite(random.Random(seed))
        assert totals[name] >= 10_000
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    say(capsys, "[criterion 10] PASS: %s at %d cases each, %.1fs total"
        % (", ".join(totals), CASES, elapsed))
