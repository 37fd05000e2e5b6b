"""Elliptic curves in long Weierstrass form over binary fields.

A curve is Y^2 + a1*X*Y + a3*Y = X^3 + a2*X^2 + a4*X + a6 with coefficients
in one :class:`~lame2.gf2.FieldContext`.  The quantities b2, b4, b6, b8, c4
and the discriminant follow the classical integer formulas; because field
elements absorb integer scalars mod 2, the same expressions serve both this
module and characteristic-zero callers that pass :class:`fractions.Fraction`
coefficients.

Two families recur throughout the package:

* the supersingular curve ``Y^2 + Y = X^3`` (j = 0, Frobenius trace 0 over
  F_2, full n-torsion rational over a predictable extension), and
* the ordinary curves ``Y^2 + X*Y = X^3 + t*X`` with t != 0 (j = 1/t^2,
  unique two-torsion point (0, 0)).

Scalar multiplication, point counting, torsion-basis search with an explicit
distinctness certificate, and the (u, r, s, t) change of variables all live
here.
"""

from __future__ import annotations

import random

from .common import INFINITY, Infinity, TorsionSearchExhausted, VerificationError
from .gf2 import GF, FieldContext, FieldElement, embed, solve_artin_schreier, trace


def curve_invariants(a1, a2, a3, a4, a6):
    """b- and c-quantities plus discriminant for any coefficient ring.

    Returns a dict with keys b2, b4, b6, b8, c4, c6, disc.  Written with
    integer scalars so it is exact over Fraction and reduces correctly over
    binary fields.  Raises VerificationError if the classical consistency
    identities fail, which would indicate broken scalar arithmetic.
    """
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    disc = -(b2 * b2 * b8) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) \
        + 9 * b2 * b4 * b6
    if 4 * b8 != b2 * b6 - b4 * b4:
        raise VerificationError("b-invariant identity failed")
    if 1728 * disc != c4 * c4 * c4 - c6 * c6:
        raise VerificationError("1728*disc identity failed")
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8,
            "c4": c4, "c6": c6, "disc": disc}


def transformed_coefficients(coeffs, u, r, s, t):
    """Weierstrass coefficients after x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    Standard change-of-variables table; valid over any field whose elements
    absorb integer scalars.  u must be invertible.
    """
    a1, a2, a3, a4, a6 = coeffs
    u2 = u * u
    u3 = u2 * u
    new_a1 = (a1 + 2 * s) / u
    new_a2 = (a2 - s * a1 + 3 * r - s * s) / u2
    new_a3 = (a3 + r * a1 + 2 * t) / u3
    new_a4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1
              + 3 * r * r - 2 * s * t) / (u2 * u2)
    new_a6 = (a6 + r * a4 + r * r * a2 + r * r * r
              - t * a3 - t * t - r * t * a1) / (u3 * u3)
    return (new_a1, new_a2, new_a3, new_a4, new_a6)


class WeierstrassCurve:
    """A smooth long-Weierstrass curve over a binary field."""

    __slots__ = ("ctx", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, ctx: FieldContext, a1, a2, a3, a4, a6):
        self.ctx = ctx
        self.a1 = ctx(a1)
        self.a2 = ctx(a2)
        self.a3 = ctx(a3)
        self.a4 = ctx(a4)
        self.a6 = ctx(a6)
        if self.discriminant() == ctx.zero:
            raise ValueError("singular curve")

    @classmethod
    def supersingular(cls, field) -> "WeierstrassCurve":
        """Y^2 + Y = X^3 over GF(2^d); `field` is a context or a degree."""
        ctx = field if isinstance(field, FieldContext) else GF(field)
        return cls(ctx, 0, 0, 1, 0, 0)

    @classmethod
    def ordinary(cls, field, t) -> "WeierstrassCurve":
        """Y^2 + X*Y = X^3 + t*X over GF(2^d), t != 0."""
        ctx = field if isinstance(field, FieldContext) else GF(field)
        t = ctx(t)
        if t == ctx.zero:
            raise ValueError("t = 0 gives a singular curve")
        return cls(ctx, 1, 0, 0, t, 0)

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def invariants(self) -> dict:
        return curve_invariants(*self.coefficients())

    def discriminant(self) -> FieldElement:
        return curve_invariants(*self.coefficients())["disc"]

    def j_invariant(self) -> FieldElement:
        inv = self.invariants()
        c4 = inv["c4"]
        return c4 * c4 * c4 / inv["disc"]

    def is_supersingular(self) -> bool:
        # in characteristic 2 a smooth curve is supersingular iff a1 = 0
        return self.a1 == self.ctx.zero

    def rhs(self, x: FieldElement) -> FieldElement:
        """X^3 + a2 X^2 + a4 X + a6 at x."""
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def hpoly(self, x: FieldElement) -> FieldElement:
        """a1 X + a3 at x; zero exactly at the two-torsion x-coordinates."""
        return self.a1 * x + self.a3

    def contains(self, x, y) -> bool:
        x = self.ctx(x)
        y = self.ctx(y)
        return y * y + self.hpoly(x) * y == self.rhs(x)

    def point(self, x, y) -> "CurvePoint":
        x = self.ctx(x)
        y = self.ctx(y)
        if not self.contains(x, y):
            raise ValueError("point is not on the curve")
        return CurvePoint(self, x, y)

    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def fiber_y(self, x) -> tuple:
        """All y with (x, y) on the curve, sorted by bit pattern."""
        x = self.ctx(x)
        h = self.hpoly(x)
        f = self.rhs(x)
        if h == self.ctx.zero:
            # y^2 = f has the single root sqrt(f)
            return (f.sqrt(),)
        ys = tuple(h * z for z in solve_artin_schreier(f / (h * h)))
        return tuple(sorted(ys, key=lambda e: e.bits))

    def count_points(self, method: str = "enumerate") -> int:
        """|E(F_q)|, by fiber enumeration or by the supersingular recurrence.

        "enumerate" refuses fields past 2^20; "supersingular_formula" requires
        the Y^2+Y=X^3 model and works at any degree.
        """
        if method == "supersingular_formula":
            ok = (self.a1.bits, self.a2.bits, self.a3.bits,
                  self.a4.bits, self.a6.bits) == (0, 0, 1, 0, 0)
            if not ok:
                raise ValueError("formula applies to the Y^2+Y=X^3 model only")
            return supersingular_order(self.ctx.degree)
        if method != "enumerate":
            raise ValueError("unknown counting method %r" % (method,))
        if self.ctx.degree > 20:
            raise ValueError("field too large to enumerate; use a formula")
        total = 1
        zero = self.ctx.zero
        for x in self.ctx.elements():
            h = self.hpoly(x)
            if h == zero:
                total += 1
            elif trace(self.rhs(x) / (h * h)) == 0:
                total += 2
        return total

    def random_point(self, rng: random.Random) -> "CurvePoint":
        while True:
            x = self.ctx.random(rng)
            ys = self.fiber_y(x)
            if ys:
                return CurvePoint(self, x, ys[rng.randrange(len(ys))])

    def base_change(self, target: FieldContext) -> "WeierstrassCurve":
        return WeierstrassCurve(
            target, *(embed(a, target) for a in self.coefficients()))

    def lift_point(self, pt: "CurvePoint", target: FieldContext) -> "CurvePoint":
        big = self.base_change(target)
        if pt.is_infinity():
            return big.infinity()
        return big.point(embed(pt.x, target), embed(pt.y, target))

    def transform(self, u, r, s, t):
        """Isomorphic curve under (u, r, s, t) plus the forward point map."""
        u = self.ctx(u)
        r = self.ctx(r)
        s = self.ctx(s)
        t = self.ctx(t)
        if u == self.ctx.zero:
            raise ValueError("u must be invertible")
        new = WeierstrassCurve(
            self.ctx, *transformed_coefficients(self.coefficients(), u, r, s, t))
        u2 = u * u
        u3 = u2 * u

        def fwd(pt: "CurvePoint") -> "CurvePoint":
            if pt.is_infinity():
                return new.infinity()
            xp = (pt.x + r) / u2
            yp = (pt.y + t + s * (pt.x + r)) / u3
            return new.point(xp, yp)

        return new, fwd

    def to_json(self) -> dict:
        return {"d": self.ctx.degree,
                "a": [a.to_json()["hex"] for a in self.coefficients()]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeierstrassCurve):
            return NotImplemented
        return self.ctx == other.ctx and self.coefficients() == other.coefficients()

    def __hash__(self):
        return hash((self.ctx, tuple(a.bits for a in self.coefficients())))

    def __repr__(self) -> str:
        a = [format(c.bits, "x") for c in self.coefficients()]
        return f"WeierstrassCurve(GF(2^{self.ctx.degree}), a=[{', '.join(a)}])"


class CurvePoint:
    """A point on a WeierstrassCurve; x = y = None encodes the origin."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "CurvePoint":
        if self.is_infinity():
            return self
        E = self.curve
        return CurvePoint(E, self.x, self.y + E.hpoly(self.x))

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.curve != other.curve:
            raise ValueError("points on different curves")
        if self.is_infinity():
            return other
        if other.is_infinity():
            return self
        E = self.curve
        x1, y1 = self.x, self.y
        x2, y2 = other.x, other.y
        if x1 == x2:
            if y2 == y1 + E.hpoly(x1):
                return E.infinity()
            # tangent; h(x1) != 0 here since h = 0 forces y2 = y1 + h = y1
            lam = (x1 * x1 + E.a4 + E.a1 * y1) / E.hpoly(x1)
        else:
            lam = (y1 + y2) / (x1 + x2)
        nu = y1 + lam * x1
        x3 = lam * lam + E.a1 * lam + E.a2 + x1 + x2
        y3 = (lam + E.a1) * x3 + nu + E.a3
        return CurvePoint(E, x3, y3)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self + (-other)

    def __mul__(self, k: int) -> "CurvePoint":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (-self) * (-k)
        acc = self.curve.infinity()
        add = self
        while k:
            if k & 1:
                acc = acc + add
            add = add + add
            k >>= 1
        return acc

    __rmul__ = __mul__

    def order(self, bound: int = 10000) -> int:
        """Exact order by repeated addition; raises past `bound`."""
        acc = self
        n = 1
        while not acc.is_infinity():
            acc = acc + self
            n += 1
            if n > bound:
                raise VerificationError("order exceeds bound")
        return n

    def to_json(self):
        if self.is_infinity():
            return INFINITY.to_json()
        return {"curve": [a.to_json() for a in self.curve.coefficients()],
                "x": self.x.to_json(), "y": self.y.to_json()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.curve != other.curve:
            return False
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity():
            return hash((self.curve, None))
        return hash((self.curve, self.x.bits, self.y.bits))

    def __repr__(self) -> str:
        if self.is_infinity():
            return "CurvePoint(infinity)"
        return (f"CurvePoint(x=0x{self.x.bits:x}, y=0x{self.y.bits:x}, "
                f"d={self.curve.ctx.degree})")


def supersingular_trace(d: int) -> int:
    """Frobenius trace of Y^2 + Y = X^3 over GF(2^d).

    t_0 = 2, t_1 = 0, t_k = -2 t_{k-2}; zero for odd d.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d % 2 == 1:
        return 0
    m = d // 2
    return 2 * (-2) ** m


def supersingular_order(d: int) -> int:
    """|E(F_{2^d})| for Y^2 + Y = X^3."""
    return (1 << d) + 1 - supersingular_trace(d)


def torsion_field_degree(n: int) -> int:
    """Least d with the full n-torsion of Y^2 + Y = X^3 rational over GF(2^d).

    Frobenius satisfies phi^2 + 2 = 0, so d is the order of the companion
    matrix of x^2 + 2 in GL_2(Z/n).
    """
    if n < 2 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")

    def matmul(A, B):
        return ((A[0] * B[0] + A[1] * B[2]) % n,
                (A[0] * B[1] + A[1] * B[3]) % n,
                (A[2] * B[0] + A[3] * B[2]) % n,
                (A[2] * B[1] + A[3] * B[3]) % n)

    M = (0, (-2) % n, 1, 0)
    ident = (1, 0, 0, 1)
    acc = M
    d = 1
    while acc != ident:
        acc = matmul(acc, M)
        d += 1
        if d > 4 * n * n:
            raise VerificationError("companion matrix order out of range")
    return d


def extension_order(base_order: int, q: int, k: int) -> int:
    """|E(F_{q^k})| from |E(F_q)| via the Frobenius eigenvalue recurrence.

    With t = q + 1 - base_order, the power sums s_j of the two eigenvalues
    satisfy s_0 = 2, s_1 = t, s_j = t*s_{j-1} - q*s_{j-2}.
    """
    t = q + 1 - base_order
    s0, s1 = 2, t
    for _ in range(k - 1):
        s0, s1 = s1, t * s1 - q * s0
    return q ** k + 1 - s1


def point_order(curve: WeierstrassCurve, point: "CurvePoint",
                group_order: int | None = None) -> int:
    """Exact order of a point: factor the group order and strip primes.

    The group order is the supersingular closed form when the model allows,
    direct enumeration otherwise; callers on large ordinary fields must pass
    it in (e.g. from extension_order).
    """
    if point.is_infinity():
        return 1
    N = group_order
    if N is None:
        try:
            N = curve.count_points("supersingular_formula")
        except ValueError:
            N = curve.count_points()
    if not (N * point).is_infinity():
        raise VerificationError("stated group order does not annihilate the point")
    from sympy import factorint

    n = N
    for p in factorint(N):
        while n % p == 0 and ((n // p) * point).is_infinity():
            n //= p
    return n


def _prime_powers(n: int) -> dict:
    """n = prod p^e as {p: e}; trial division, fine for the sizes used here."""
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _p_power_part(N: int, p: int) -> int:
    v = 0
    while N % p == 0:
        N //= p
        v += 1
    return v


def point_of_exact_order(curve: WeierstrassCurve, group_order: int, n: int,
                         rng: random.Random, trials: int = 256) -> CurvePoint:
    """A point of exact order n, via the cofactor method prime by prime."""
    parts = []
    for p, e in _prime_powers(n).items():
        v = _p_power_part(group_order, p)
        if v < e:
            raise ValueError(f"group order lacks {p}^{e}")
        cofactor = group_order // p ** v
        for attempt in range(trials):
            S = cofactor * curve.random_point(rng)
            # S has order p^j; walk down to exact order p^e
            chain = [S]
            while not chain[-1].is_infinity():
                chain.append(p * chain[-1])
            j = len(chain) - 1
            if j >= e:
                parts.append(chain[j - e])
                break
        else:
            raise TorsionSearchExhausted(p ** e, trials)
    acc = curve.infinity()
    for pt in parts:
        acc = acc + pt
    if not (n * acc).is_infinity():
        raise VerificationError("cofactor search returned a bad point")
    for p in _prime_powers(n):
        if ((n // p) * acc).is_infinity():
            raise VerificationError("cofactor search returned a bad point")
    return acc


def torsion_basis(n: int, seed: int = 0):
    """(curve, P, Q): a certified basis of the n-torsion of Y^2 + Y = X^3.

    The curve lives over GF(2^d) with d = torsion_field_degree(n).  The
    certificate enumerates all n^2 combinations a*P + b*Q and checks they
    are pairwise distinct, so (P, Q) really generates (Z/n)^2.
    """
    d = torsion_field_degree(n)
    curve = WeierstrassCurve.supersingular(d)
    N = supersingular_order(d)
    if d <= 12 and N != curve.count_points():
        raise VerificationError("order formula disagrees with enumeration")
    rng = random.Random(seed)
    P = point_of_exact_order(curve, N, n, rng)
    row = [curve.infinity()]
    for _ in range(n - 1):
        row.append(row[-1] + P)
    for attempt in range(64):
        Q = point_of_exact_order(curve, N, n, rng)
        seen = set()
        for b in range(n):
            shift = b * Q
            for a in range(n):
                seen.add(row[a] + shift)
        if len(seen) == n * n:
            return curve, P, Q
    raise TorsionSearchExhausted(n, 64)


def torsion_points(curve: WeierstrassCurve, P: CurvePoint, Q: CurvePoint,
                   n: int, exact: bool = True) -> list:
    """All points a*P + b*Q, filtered to exact order n when `exact`."""
    pts = []
    for a in range(n):
        for b in range(n):
            T = a * P + b * Q
            if not exact:
                pts.append(T)
                continue
            if (n * T).is_infinity() and not T.is_infinity():
                good = all(not ((n // p) * T).is_infinity()
                           for p in _prime_powers(n))
                if good:
                    pts.append(T)
    return pts


def ordinary_with_torsion(n: int, seed: int = 0, max_degree: int = 16):
    """(curve, P): an ordinary curve Y^2 + XY = X^3 + tX with P of exact order n.

    Scans extension degrees upward, counting each candidate curve, and takes
    the first (d, t) whose group order is divisible by n.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    rng = random.Random(seed)
    for d in range(2, max_degree + 1):
        ctx = GF(d)
        for tbits in range(1, 1 << d):
            curve = WeierstrassCurve.ordinary(ctx, ctx(tbits))
            N = curve.count_points()
            if N % n:
                continue
            P = point_of_exact_order(curve, N, n, rng)
            return curve, P
    raise TorsionSearchExhausted(n, max_degree)
