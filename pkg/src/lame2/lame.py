"""Torsion covers of the supersingular curve and their classification.

The supersingular model Y^2 + Y = X^3 has automorphism group of order 24
(fixing the origin), realized here as triples (u, a, c) with u^3 = 1,
a in F_4 and c^2 + c = a^3, acting by

    (x, y) |-> (u^2 x + a, y + u^2 a^2 x + c).

The parametrization is rederived rather than quoted, so the module verifies
it at runtime before use: curve preservation, group closure under the
composition law, compatibility with point addition, and the order-24 count.

The degree-12 map (x, y) |-> (x^4 + x)^3 is invariant under all 24
automorphisms and identifies the quotient of the affine curve by the group
with the affine line.  Odd-torsion points are classified by their image
under this map; the classification, the counting formulas, the field-of-
moduli census, and the Galois equivariance of the quotient all live here,
together with the canonical branch-certified cover attached to a torsion
point on either curve family.
"""

from __future__ import annotations

import json
import random
from functools import lru_cache
from math import gcd, lcm

from sympy import divisors, factorint, mobius

from .common import FiberEscapeError, INFINITY, VerificationError
from .gf2 import GF, FieldContext, FieldElement, element_degree, embed, poly_roots
from .gf2 import Poly
from .weierstrass import (
    CurvePoint,
    WeierstrassCurve,
    extension_order,
    point_of_exact_order,
    point_order,
    supersingular_order,
    torsion_basis,
)
from .funcfield import miller_function, ramification_profile


# ---------------------------------------------------------------------------
# the automorphism group of (E, 0) for E: Y^2 + Y = X^3


def _is_supersingular_model(curve: WeierstrassCurve) -> bool:
    return tuple(a.bits for a in curve.coefficients()) == (0, 0, 1, 0, 0)


def _require_supersingular_model(curve: WeierstrassCurve):
    if not _is_supersingular_model(curve):
        raise ValueError("operation is specific to the Y^2+Y=X^3 model")


class AutomorphismElement:
    """One automorphism (u, a, c) of the pointed curve (Y^2+Y=X^3, 0)."""

    __slots__ = ("u", "a", "c")

    def __init__(self, u: FieldElement, a: FieldElement, c: FieldElement):
        self.u = u
        self.a = a
        self.c = c

    def __call__(self, P: CurvePoint) -> CurvePoint:
        _require_supersingular_model(P.curve)
        if P.is_infinity():
            return P
        u2 = self.u * self.u
        x = u2 * P.x + self.a
        y = P.y + u2 * self.a * self.a * P.x + self.c
        return P.curve.point(x, y)

    def compose(self, other: "AutomorphismElement") -> "AutomorphismElement":
        """self after other, as one element of the group."""
        u1, a1, c1 = self.u, self.a, self.c
        u2, a2, c2 = other.u, other.a, other.c
        u1sq = u1 * u1
        return AutomorphismElement(
            u1 * u2,
            u1sq * a2 + a1,
            c1 + c2 + u1sq * a1 * a1 * a2,
        )

    def key(self):
        return (self.u.bits, self.a.bits, self.c.bits)

    def is_identity(self) -> bool:
        return self.key() == (1, 0, 0)

    def __eq__(self, other):
        if not isinstance(other, AutomorphismElement):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "AutomorphismElement(u=%r, a=%r, c=%r)" % (self.u, self.a, self.c)


def _fourth_roots(ctx: FieldContext):
    """Solutions of a^4 = a, i.e. the copy of F_4 inside the context."""
    x = Poly.x(ctx)
    roots = [r for r, _mult in poly_roots(x * x * x * x + x)]
    if len(roots) != 4:
        raise VerificationError("context does not contain F_4")
    return roots


_AUT_CACHE = {}


def aut_group(field) -> list:
    """All 24 automorphisms of (Y^2+Y=X^3, 0) over an even-degree field.

    The list is self-verified once per context: curve preservation and
    addition-compatibility on random points, closure of the composition
    law, presence of identity and negation, and a non-commuting pair.
    """
    ctx = field if isinstance(field, FieldContext) else GF(field)
    if ctx.degree % 2:
        raise ValueError("the automorphism group needs F_4, an even degree")
    cached = _AUT_CACHE.get(ctx)
    if cached is not None:
        return list(cached)

    f4 = _fourth_roots(ctx)
    cube_roots = [a for a in f4 if a.bits]
    elements = []
    for u in cube_roots:
        for a in f4:
            rhs = a * a * a
            cs = [c for c in f4 if c * c + c == rhs]
            # c lives in F_4 because c^2 + c = a^3 is an F_4 equation
            for c in sorted(cs, key=lambda e: e.bits):
                elements.append(AutomorphismElement(u, a, c))
    _verify_aut_group(ctx, elements)
    _AUT_CACHE[ctx] = tuple(elements)
    return list(elements)


def _verify_aut_group(ctx: FieldContext, elements):
    if len(elements) != 24:
        raise VerificationError("expected 24 automorphisms, found %d"
                                % len(elements))
    table = {alpha.key() for alpha in elements}
    if len(table) != 24:
        raise VerificationError("automorphism list has duplicates")
    if (1, 0, 0) not in table:
        raise VerificationError("identity element missing")

    curve = WeierstrassCurve.supersingular(ctx)
    rng = random.Random(0xA07)
    points = [curve.random_point(rng) for _ in range(4)]

    neg = AutomorphismElement(ctx.one, ctx.zero, ctx.one)
    if neg.key() not in table:
        raise VerificationError("negation element missing")
    for P in points:
        if neg(P) != -P:
            raise VerificationError("(1,0,1) does not act as negation")

    for alpha in elements:
        for P in points:
            alpha(P)  # curve.point inside the action validates membership
        if not alpha(curve.infinity()).is_infinity():
            raise VerificationError("automorphism moves the origin")
        if alpha(points[0] + points[1]) != alpha(points[0]) + alpha(points[1]):
            raise VerificationError("automorphism is not additive")

    noncommuting = False
    for alpha in elements:
        for beta in elements:
            gamma = alpha.compose(beta)
            if gamma.key() not in table:
                raise VerificationError("composition left the set")
            if gamma(points[0]) != alpha(beta(points[0])):
                raise VerificationError("composition law disagrees with action")
            if not noncommuting and gamma.key() != beta.compose(alpha).key():
                noncommuting = True
    if not noncommuting:
        raise VerificationError("group verified abelian; expected non-abelian")


# ---------------------------------------------------------------------------
# the quotient map and its fibers


def rho(P: CurvePoint) -> FieldElement:
    """The 24-fold quotient invariant (x^4 + x)^3 of an affine point."""
    _require_supersingular_model(P.curve)
    if P.is_infinity():
        raise ValueError("the quotient map is affine; the origin is excluded")
    x = P.x
    t = x * x * x * x + x
    return t * t * t


def _even_context_point(P: CurvePoint) -> CurvePoint:
    if P.curve.ctx.degree % 2 == 0:
        return P
    big = GF(2 * P.curve.ctx.degree)
    curve = P.curve.base_change(big)
    return P.curve.lift_point(P, big)


def aut_orbit(P: CurvePoint) -> set:
    """Orbit of P under all 24 automorphisms (over an even-degree field)."""
    _require_supersingular_model(P.curve)
    P = _even_context_point(P)
    orbit = {alpha(P) for alpha in aut_group(P.curve.ctx)}
    if 24 % len(orbit):
        raise VerificationError("orbit size does not divide the group order")
    return orbit


def _point_sort_key(P: CurvePoint) -> bytes:
    return json.dumps(P.to_json(), sort_keys=True).encode()


class LameClass:
    """One isomorphism class of torsion covers, tagged by its quotient value."""

    __slots__ = ("order", "rho_value", "moduli_degree", "representative")

    def __init__(self, order: int, rho_value: FieldElement,
                 moduli_degree: int, representative: CurvePoint):
        self.order = order
        self.rho_value = rho_value
        self.moduli_degree = moduli_degree
        self.representative = representative

    def to_json(self):
        return {"n": self.order,
                "rho": self.rho_value.to_json(),
                "moduli_degree": self.moduli_degree,
                "rep": self.representative.to_json()}

    def __repr__(self):
        return "LameClass(n=%d, rho=%r, moduli_degree=%d)" % (
            self.order, self.rho_value, self.moduli_degree)


def classify_torsion(n: int) -> list:
    """Group the exact-order-n points by quotient value, one class each.

    The ground field is the full n-torsion field.  Every merged pair is
    certified: points share a quotient value exactly when they share an
    automorphism orbit.
    """
    return list(_classify_torsion(n))


@lru_cache(maxsize=None)
def _classify_torsion(n: int) -> tuple:
    if n < 3 or n % 2 == 0:
        raise ValueError("order must be odd and at least 3")
    if n > 13:
        raise ValueError("desk-scale classification stops at order 13")
    curve, P1, P2 = torsion_basis(n)
    row = [curve.infinity()]
    for _ in range(n - 1):
        row.append(row[-1] + P1)
    points = []
    for a in range(n):
        Q = a * P2
        for b in range(n):
            if gcd(gcd(a, b), n) == 1:
                points.append(row[b] + Q)

    groups = {}
    for P in points:
        groups.setdefault(rho(P).bits, []).append(P)

    total = sum(len(members) for members in groups.values())
    if total != psi(n):
        raise VerificationError("exact-order locus has size %d, expected %d"
                                % (total, psi(n)))

    classes = []
    for bits in sorted(groups):
        members = groups[bits]
        rep = min(members, key=_point_sort_key)
        orbit = aut_orbit(rep)
        if orbit != set(members):
            raise VerificationError(
                "quotient fiber differs from automorphism orbit at rho=%x"
                % bits)
        value = rep.curve.ctx(bits)
        classes.append(LameClass(n, value, element_degree(value), rep))
    return tuple(classes)


def psi(n: int) -> int:
    """Number of exact-order-n points on any elliptic curve, n odd."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    out = 1
    for p, r in factorint(n).items():
        out *= p ** (2 * r - 2) * (p * p - 1)
    return out


def eta_paper(d: int) -> int:
    """The multiplicative count 2^(p^r) - 2^(p^(r-1)) extended by products.

    Correct on prime powers; on d with several prime factors it differs
    from the exact-degree element count (see degree_count_true), and both
    are reported side by side wherever they are compared.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return 2
    out = 1
    for p, r in factorint(d).items():
        out *= 2 ** (p ** r) - 2 ** (p ** (r - 1))
    return out


def degree_count_true(d: int) -> int:
    """#{c in F_{2^d} : the subfield generated by c has degree exactly d}."""
    if d < 1:
        raise ValueError("d must be positive")
    return sum(int(mobius(d // e)) * (1 << e) for e in divisors(d))


def lame_count_dividing(n: int) -> int:
    """Number of cover classes of order dividing n (n odd, n > 1).

    Closed form (n^2-1)/24 away from multiples of 3, (3m^2+5)/8 at n = 3m;
    cross-checked against the brute classification for n <= 13.
    """
    if n <= 1 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    if n % 3:
        expected = (n * n - 1) // 24
    else:
        m = n // 3
        expected = (3 * m * m + 5) // 8
    if n <= 13:
        brute = sum(len(classify_torsion(m)) for m in divisors(n) if m > 1)
        if brute != expected:
            raise VerificationError(
                "count formula %d disagrees with classification %d"
                % (expected, brute))
    return expected


# ---------------------------------------------------------------------------
# field-of-moduli census


def _roots_in_some_extension(ctx: FieldContext, c: FieldElement):
    """Roots of (x^4+x)^3 = c in the least extension tower step that has any."""
    for e in range(1, 13):
        big = GF(ctx.degree * e)
        x = Poly.x(big)
        t = x * x * x * x + x
        g = t * t * t + Poly.const(embed(c, big))
        roots = [r for r, _mult in poly_roots(g)]
        if roots:
            return big, roots
    raise VerificationError("degree-12 polynomial had no root in degree <= 12"
                            " extensions")  # pragma: no cover


def _lift_to_curve(x0: FieldElement) -> CurvePoint:
    """A point of Y^2+Y=X^3 above x0, doubling the field once if needed."""
    curve = WeierstrassCurve.supersingular(x0.ctx)
    ys = curve.fiber_y(x0)
    if not ys:
        big = GF(2 * x0.ctx.degree)
        curve = WeierstrassCurve.supersingular(big)
        x0 = embed(x0, big)
        ys = curve.fiber_y(x0)
        if not ys:
            raise VerificationError("trace obstruction survived a quadratic"
                                    " extension")  # pragma: no cover
    return curve.point(x0, ys[0])


def moduli_census(d: int) -> dict:
    """One certified cover class for every quotient value in F_{2^d}.

    Each c is realized as the quotient value of an explicit point (root of
    (x^4+x)^3 = c lifted to the curve), its exact order recorded, and the
    classes partitioned by the degree of the subfield their value generates.
    """
    if not 1 <= d <= 8:
        raise ValueError("census is desk-scale: 1 <= d <= 8")
    ctx = GF(d)
    classes = []
    by_degree = {}
    for c in ctx.elements():
        big, roots = _roots_in_some_extension(ctx, c)
        P = _lift_to_curve(roots[0])
        value = rho(P)
        if value != embed(c, P.curve.ctx):
            raise VerificationError("constructed point has the wrong quotient"
                                    " value")
        order = point_order(P.curve, P,
                            supersingular_order(P.curve.ctx.degree))
        degree = element_degree(c)
        classes.append(LameClass(order, c, degree, P))
        by_degree[degree] = by_degree.get(degree, 0) + 1

    if len(classes) != 1 << d:
        raise VerificationError("census size is not 2^d")  # pragma: no cover
    expected = {e: degree_count_true(e) for e in divisors(d)}
    if by_degree != expected:
        raise VerificationError("per-degree counts %r do not match the"
                                " Moebius counts %r" % (by_degree, expected))
    return {"d": d,
            "classes": classes,
            "by_degree": by_degree,
            "by_degree_expected": expected,
            "eta_paper": {e: eta_paper(e) for e in sorted(expected)},
            "count": len(classes)}


def galois_equivariance_check(d: int, samples: int = 1000,
                              seed: int = 0) -> dict:
    """Does the quotient map commute with the 2^d-power Frobenius?

    Samples points over a spread of even-degree fields and compares
    rho(Frobenius(P)) with Frobenius(rho(P)) exactly.
    """
    rng = random.Random(seed)
    failures = []
    checked = 0
    degrees = [2, 4, 6, 8, 12]
    while checked < samples:
        degree = degrees[checked % len(degrees)]
        curve = WeierstrassCurve.supersingular(degree)
        P = curve.random_point(rng)
        img = curve.point(P.x.frobenius(d), P.y.frobenius(d))
        if rho(img) != rho(P).frobenius(d):
            failures.append(P.to_json())  # pragma: no cover
        checked += 1
    return {"d": d, "samples": checked, "failures": failures,
            "passed": not failures}


# ---------------------------------------------------------------------------
# the canonical cover of a torsion point, with certified branch data


def _branch_fiber(profile, value):
    for v, fib in profile.items():
        if v is value or v == value:
            return fib
    raise VerificationError("missing branch value in profile")


def _poly_sqrt(p):
    if any(p.coeffs[1::2]):
        raise VerificationError("polynomial is not a perfect square")
    return Poly(p.ctx, [p.coeff(i).sqrt() for i in range(0, len(p.coeffs), 2)])


def _radical(p):
    """Product of the distinct irreducible factors, each taken once."""
    if p.degree <= 0:
        return Poly.one(p.ctx)
    d = p.deriv()
    if d.is_zero():
        return _radical(_poly_sqrt(p))
    g = p.gcd(d)
    odd = p // g
    rest = _radical(g)
    return odd * (rest // odd.gcd(rest))


def _factor_degrees(p):
    """Degrees of the irreducible factors of a squarefree polynomial."""
    f = p.monic()
    x = Poly.x(p.ctx)
    r = x % f
    degrees = []
    i = 0
    while f.degree > 2 * i:
        i += 1
        for _ in range(p.ctx.degree):
            r = r.square() % f
        g = f.gcd(r + x)
        if g.degree > 0:
            degrees.extend([i] * (g.degree // i))
            f = f // g
            r = r % f
    if f.degree > 0:
        degrees.append(f.degree)
    return degrees


def _fiber_splitting_degree(func, value):
    """Least extension degree whose x-line splits the fiber over value.

    The x-coordinates of the fiber are the roots of the norm form of
    func - value (together with the pole locus), so the factor degrees of
    its radical bound the field where the whole fiber becomes rational.
    """
    N = (func + value).norm_numerator() * func.D
    return lcm(1, *_factor_degrees(_radical(N)))


def _normalized_cover(P: CurvePoint, n: int):
    """The cover function with its distinguished third point Q, 2Q = P."""
    if n < 3 or n % 2 == 0:
        raise ValueError("order must be odd and at least 3")
    curve = P.curve
    f = miller_function(P, n)
    half = ((n + 1) // 2) % n
    supersingular = curve.is_supersingular()
    if supersingular:
        Q = half * P
        f = f / f.evaluate(Q)
    else:
        R = curve.point(0, curve.fiber_y(curve.ctx.zero)[0])
        if not (R + R).is_infinity() or R.is_infinity():
            raise VerificationError("x = 0 is not the 2-torsion point")
        Q = half * P + R
        f = f / f.evaluate(R)
    if Q + Q != P:
        raise VerificationError("midpoint does not double back to P")
    return f, Q, supersingular


def third_point_datum(P: CurvePoint, n: int) -> dict:
    """Index and different exponent at the third point only.

    Skips the fiber enumeration of cover_profile, so it stays in the base
    field and is cheap enough to sweep every exact-order point.
    """
    from .funcfield import different_exponent, ramification_index
    f, Q, supersingular = _normalized_cover(P, n)
    e = ramification_index(f, Q)
    d = different_exponent(f, Q) if e > 1 else 0
    return {
        "n": n,
        "model": "supersingular" if supersingular else "ordinary",
        "index": e,
        "different_exponent": d,
        "tame": e > 1 and d == e - 1,
        "signature": 1 if (n * Q).is_infinity() else 0,
    }


def cover_profile(P: CurvePoint, n: int) -> dict:
    """Degree-n cover attached to an n-torsion point, with its branch data.

    The function with divisor n(P) - n(0) is normalized by the family's
    convention: value 1 at the midpoint Q = ((n+1)/2)P on the supersingular
    model, value 1 at the 2-torsion point R on the ordinary model.  The
    returned report certifies the fibers over every branch value and the
    different-degree accounting, and classifies the third branch point.
    """
    curve = P.curve
    f, Q, supersingular = _normalized_cover(P, n)

    third = f.evaluate(Q)
    if third.bits == 0:
        raise VerificationError("third branch value collided with 0")

    # The unramified sheets over the third value need not be rational over
    # the field carrying P, so the certificate runs over the splitting
    # extension of the fiber (one extra quadratic step covers the y-line).
    k = _fiber_splitting_degree(f, third)
    retried = False
    while True:
        if k == 1:
            work, P_w, Q_w = f, P, Q
        else:
            big = GF(curve.ctx.degree * k)
            work = f.base_change(big)
            P_w = curve.lift_point(P, big)
            Q_w = curve.lift_point(Q, big)
        values = [work.curve.ctx.zero, work.curve.ctx(
            embed(third, work.curve.ctx)), INFINITY]
        try:
            profile = ramification_profile(work, values)
            break
        except FiberEscapeError:
            if retried:
                raise
            retried = True
            k *= 2

    zero_fiber = _branch_fiber(profile, values[0])
    pole_fiber = _branch_fiber(profile, INFINITY)
    if zero_fiber != [(P_w, n, n - 1)]:
        raise VerificationError("zero fiber is not n-fold at P")
    if pole_fiber != [(work.curve.infinity(), n, n - 1)]:
        raise VerificationError("pole fiber is not n-fold at the origin")

    third_fiber = _branch_fiber(profile, values[1])
    ramified = [(pt, e, dq) for pt, e, dq in third_fiber if e > 1]
    if len(ramified) != 1 or ramified[0][0] != Q_w:
        raise VerificationError("third fiber is not ramified exactly at Q")
    if sum(e for _pt, e, _dq in third_fiber) != n:
        raise VerificationError("third fiber does not cover all sheets")
    e3, d3 = ramified[0][1], ramified[0][2]
    tame = d3 == e3 - 1
    total = sum(dq for fib in profile.values() for _pt, _e, dq in fib)
    if total != 2 * n:
        raise VerificationError("different degree %d is not 2n" % total)

    # order(Q) is n or 2n (2Q = P pins it); n*Q = 0 decides which
    signature = 1 if (n * Q).is_infinity() else 0
    return {
        "n": n,
        "model": "supersingular" if supersingular else "ordinary",
        "function": f,
        "point": P,
        "third_point": Q,
        "third_value": third,
        "index": e3,
        "different_exponent": d3,
        "tame": tame,
        "signature": signature,
        "field_degree": work.curve.ctx.degree,
        "profile": profile,
    }


def ordinary_torsion_point(t, n: int, seed: int = 0):
    """An exact-order-n point on Y^2+XY=X^3+tX over the least extension.

    t is a nonzero element of its base field; the extension degree comes
    from the Frobenius eigenvalue recurrence, the point from the cofactor
    method, and the result is returned with the base-changed curve.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("order must be odd and at least 3")
    base_ctx = t.ctx
    base = WeierstrassCurve.ordinary(base_ctx, t)
    base_order = base.count_points()
    q = 1 << base_ctx.degree
    k = 1
    while extension_order(base_order, q, k) % n:
        k += 1
        if k > 4 * n * n:
            raise VerificationError("no extension carries order-n points")
    big = GF(base_ctx.degree * k)
    curve = base.base_change(big)
    N = extension_order(base_order, q, k)
    rng = random.Random(seed)
    P = point_of_exact_order(curve, N, n, rng)
    return curve, P, N
