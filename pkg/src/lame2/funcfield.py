"""Function fields of binary elliptic curves, local expansions, ramification.

Every rational function on a curve E: Y^2 + h(X) Y = f(X) (with h = a1 X + a3
and f = X^3 + a2 X^2 + a4 X + a6) has a unique presentation

    (A(X) + B(X) Y) / D(X),   D monic, gcd(A, B, D) = 1,

because 1 and Y generate the coordinate ring over k[X] freely.  Arithmetic
reduces Y^2 via the curve equation; division multiplies by the conjugate
A + B h + B Y, whose product with the numerator is the Y-free norm
A^2 + A B h + B^2 f.

Places are curve points; the three local-uniformizer regimes are

* t = X - x0 at affine points with h(x0) != 0,
* t = Y - y0 at the two-torsion x-coordinates (h(x0) = 0), and
* t = X/Y at the origin of the group law,

each expanded by a Hensel iteration whose derivative is a local unit.  On top
of the expansions sit the ramification index e_Q = v_Q(f - f(Q)), the
different exponent d_Q = v_t(d(f - f(Q))/dt) (poles use 1/f), and a fiber
certifier that accounts for every preimage of a claimed branch value and
balances the global different against 2 deg f, the Riemann-Hurwitz total for
a genus-one cover of the line.
"""

from __future__ import annotations

from .common import (
    INFINITY,
    FiberEscapeError,
    PrecisionError,
    ProfileFalsified,
    VerificationError,
)
from .gf2 import FieldElement, Poly, poly_roots
from .weierstrass import CurvePoint, WeierstrassCurve


# ---------------------------------------------------------------------------
# truncated Laurent series


class Series:
    """Laurent series sum c_k t^k known for val <= k < prec.

    coeffs[i] is the coefficient of t^(val + i); the leading coefficient is
    nonzero after normalization.  An empty coefficient list means the series
    vanishes to order prec, in which case its true valuation is unknown.
    """

    __slots__ = ("ctx", "val", "coeffs")

    def __init__(self, ctx, val, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            val += 1
        self.ctx = ctx
        self.val = val
        self.coeffs = tuple(coeffs)

    @classmethod
    def uniformizer(cls, ctx, prec):
        return cls(ctx, 1, [ctx.one] + [ctx.zero] * (prec - 2))

    @classmethod
    def constant(cls, c, prec):
        return cls(c.ctx, 0, [c] + [c.ctx.zero] * (prec - 1))

    @property
    def prec(self):
        return self.val + len(self.coeffs)

    def is_zero_to_prec(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise PrecisionError(
                f"series vanishes to O(t^{self.val}); valuation undetermined")
        return self.val

    def coeff(self, k):
        if k >= self.prec:
            raise PrecisionError(f"coefficient of t^{k} beyond precision")
        if k < self.val:
            return self.ctx.zero
        return self.coeffs[k - self.val]

    def value_at_origin(self):
        """The value at t = 0; requires nonnegative valuation."""
        if not self.coeffs:
            return self.ctx.zero
        if self.val < 0:
            raise ValueError("pole at the expansion point")
        return self.coeff(0)

    def _scalar(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, int):
            return self.ctx(other & 1)
        return None

    def __add__(self, other):
        c = self._scalar(other)
        if c is not None:
            # scalars are exact; they fold into the t^0 slot of this window
            if self.prec <= 0:
                return self
            lo = min(self.val, 0)
            out = [self.coeff(k) for k in range(lo, self.prec)]
            out[-lo] = out[-lo] + c
            return Series(self.ctx, lo, out)
        if not isinstance(other, Series):
            return NotImplemented
        lo = min(self.val, other.val)
        hi = min(self.prec, other.prec)
        out = []
        for k in range(lo, hi):
            a = self.coeffs[k - self.val] if self.val <= k < self.prec \
                else self.ctx.zero
            b = other.coeffs[k - other.val] if other.val <= k < other.prec \
                else self.ctx.zero
            out.append(a + b)
        return Series(self.ctx, lo, out)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        c = self._scalar(other)
        if c is not None:
            if not c:
                return Series(self.ctx, self.prec, [])
            return Series(self.ctx, self.val, [a * c for a in self.coeffs])
        if not isinstance(other, Series):
            return NotImplemented
        # val is a lower bound on the true valuation of each factor (it
        # equals prec when no coefficient is known), so the product is known
        # through min(p1 + v2, p2 + v1)
        out_prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return Series(self.ctx, out_prec, [])
        val = self.val + other.val
        length = out_prec - val
        out = [self.ctx.zero] * length
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            jmax = min(len(other.coeffs), length - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(self.ctx, val, out)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise PrecisionError("cannot invert a series with no known term")
        c0 = self.coeffs[0]
        inv0 = 1 / c0
        n = len(self.coeffs)
        out = [inv0] + [self.ctx.zero] * (n - 1)
        for k in range(1, n):
            acc = self.ctx.zero
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out[k] = acc * inv0
        return Series(self.ctx, -self.val, out)

    def __truediv__(self, other):
        c = self._scalar(other)
        if c is not None:
            return self * (1 / c)
        if not isinstance(other, Series):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        return self.inverse() * c

    def deriv(self):
        out = []
        for i, a in enumerate(self.coeffs):
            k = self.val + i
            out.append(a if k & 1 else self.ctx.zero)
        return Series(self.ctx, self.val - 1, out)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        hi = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        for k in range(lo, hi):
            a = self.coeffs[k - self.val] if self.val <= k else self.ctx.zero
            b = other.coeffs[k - other.val] if other.val <= k else self.ctx.zero
            if a != b:
                return False
        return True

    def __repr__(self):
        terms = [f"{a!r}*t^{self.val + i}"
                 for i, a in enumerate(self.coeffs) if a]
        body = " + ".join(terms) if terms else "0"
        return f"Series({body} + O(t^{self.prec}))"


# ---------------------------------------------------------------------------
# local expansions of the coordinate functions


def _hensel_steps(prec):
    steps = 1
    while (1 << steps) < prec + 1:
        steps += 1
    return steps + 1


def xy_expansion(curve: WeierstrassCurve, place, prec: int):
    """(X, Y) as Laurent series in the local uniformizer at `place`.

    The uniformizer is X - x0 generically, Y - y0 where h vanishes, and X/Y
    at the origin of the group law (pass the infinite point or INFINITY).
    """
    ctx = curve.ctx
    t = Series.uniformizer(ctx, prec + 1)
    infinite = place is INFINITY or (
        isinstance(place, CurvePoint) and place.is_infinity())
    if infinite:
        # w = 1/Y solves w + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
        #   + z^3 = 0 with z the uniformizer; the derivative at w = 0 is 1
        z = t
        a1, a2, a3, a4, a6 = curve.coefficients()
        w = Series(ctx, 3, [ctx.one] + [ctx.zero] * (prec - 2))
        z2 = z * z
        z3 = z2 * z
        for _ in range(_hensel_steps(prec + 3)):
            g = w + a1 * (z * w) + a2 * (z2 * w) + a3 * (w * w) \
                + a4 * (z * (w * w)) + a6 * (w * w * w) + z3
            if g.is_zero_to_prec():
                break
            gp = a1 * z + a2 * z2 + a6 * (w * w) + 1
            w = w + g / gp
        X = z / w
        Y = 1 / w
        return X, Y
    if place.curve != curve:
        raise ValueError("place lies on a different curve")
    x0, y0 = place.x, place.y
    if curve.hpoly(x0) != ctx.zero:
        # t = X - x0; solve Y^2 + h(X) Y + f(X) = 0 by y <- y + F(y)/h
        X = t + x0
        hX = curve.a1 * X + curve.a3
        fX = ((X + curve.a2) * X + curve.a4) * X + curve.a6
        Y = Series.constant(y0, prec + 1)
        for _ in range(_hensel_steps(prec + 1)):
            g = Y * Y + hX * Y + fX
            if g.is_zero_to_prec():
                break
            Y = Y + g / hX
        return X, Y
    # t = Y - y0; solve the curve for X, derivative a1 Y + X^2 + a4 is a
    # unit precisely because the point is smooth
    Y = t + y0
    X = Series.constant(x0, prec + 1)
    for _ in range(_hensel_steps(prec + 1)):
        g = Y * Y + (curve.a1 * X + curve.a3) * Y \
            + ((X + curve.a2) * X + curve.a4) * X + curve.a6
        if g.is_zero_to_prec():
            break
        gp = curve.a1 * Y + X * X + curve.a4
        X = X + g / gp
    return X, Y


# ---------------------------------------------------------------------------
# rational functions


def _as_poly(curve, v):
    if isinstance(v, Poly):
        if v.ctx != curve.ctx:
            raise ValueError("polynomial over a different context")
        return v
    if isinstance(v, FieldElement):
        return Poly.const(v)
    return Poly(curve.ctx, [curve.ctx(v).bits])


class CurveFunction:
    """A rational function (A + B Y)/D on a fixed Weierstrass curve."""

    __slots__ = ("curve", "A", "B", "D")

    def __init__(self, curve: WeierstrassCurve, A, B=0, D=1):
        A = _as_poly(curve, A)
        B = _as_poly(curve, B)
        D = _as_poly(curve, D)
        if D.is_zero():
            raise ZeroDivisionError("zero denominator")
        if A.is_zero() and B.is_zero():
            D = Poly.one(curve.ctx)
        else:
            g = A.gcd(B).gcd(D)
            if g.degree > 0:
                A = A // g
                B = B // g
                D = D // g
            lead = D.leading()
            if lead != curve.ctx.one:
                A = A * (1 / lead)
                B = B * (1 / lead)
                D = D * (1 / lead)
        self.curve = curve
        self.A = A
        self.B = B
        self.D = D

    # -- constructors --------------------------------------------------------
    @classmethod
    def coordinate_x(cls, curve):
        return cls(curve, Poly.x(curve.ctx), 0, 1)

    @classmethod
    def coordinate_y(cls, curve):
        return cls(curve, 0, Poly.one(curve.ctx), 1)

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, curve.ctx(c), 0, 1)

    def base_change(self, target) -> "CurveFunction":
        """The same function viewed over an extension of the base field."""
        big = self.curve.base_change(target)
        return CurveFunction(big,
                             self.A.map_context(target),
                             self.B.map_context(target),
                             self.D.map_context(target))

    # -- structure -----------------------------------------------------------
    def is_zero(self):
        return self.A.is_zero() and self.B.is_zero()

    def is_constant(self):
        return self.B.is_zero() and self.D.degree == 0 and self.A.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant function")
        return self.A.coeff(0)

    def _hf(self):
        E = self.curve
        h = Poly(E.ctx, [E.a3, E.a1])
        f = Poly(E.ctx, [E.a6, E.a4, E.a2, E.ctx.one])
        return h, f

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return (self.curve == other.curve and self.A == other.A
                and self.B == other.B and self.D == other.D)

    def __hash__(self):
        return hash((self.curve, self.A, self.B, self.D))

    def __repr__(self):
        return f"CurveFunction(A={self.A!r}, B={self.B!r}, D={self.D!r})"

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CurveFunction):
            if other.curve != self.curve:
                raise ValueError("functions on different curves")
            return other
        if isinstance(other, (FieldElement, int)):
            return CurveFunction.constant(self.curve, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CurveFunction(
            self.curve,
            self.A * other.D + other.A * self.D,
            self.B * other.D + other.B * self.D,
            self.D * other.D)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        h, f = self._hf()
        A1, B1, A2, B2 = self.A, self.B, other.A, other.B
        # (A1 + B1 Y)(A2 + B2 Y) with Y^2 = h Y + f
        A = A1 * A2 + B1 * B2 * f
        B = A1 * B2 + A2 * B1 + B1 * B2 * h
        return CurveFunction(self.curve, A, B, self.D * other.D)

    __rmul__ = __mul__

    def conjugate(self):
        """Image under the hyperelliptic involution Y -> Y + h."""
        h, _ = self._hf()
        return CurveFunction(self.curve, self.A + self.B * h, self.B, self.D)

    def norm_numerator(self):
        """A^2 + A B h + B^2 f, the Y-free product numerator with the conjugate."""
        h, f = self._hf()
        return self.A * self.A + self.A * self.B * h + self.B * self.B * f

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero function")
        h, _ = self._hf()
        n = self.norm_numerator()
        return CurveFunction(self.curve,
                             self.D * (self.A + self.B * h),
                             self.D * self.B,
                             n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # -- geometry ------------------------------------------------------------
    def degree(self) -> int:
        """Degree as a morphism to the projective line (0 for constants).

        The function T = (A + BY)/D satisfies
        D^2 T^2 + (D B h) T + (A^2 + A B h + B^2 f) = 0 over k(X); the
        minimal polynomial of X over k(T) is the primitive part of that
        relation, so the degree is the top coefficient degree minus the
        X-content.  The content is exactly the spurious locus where
        numerator and denominator vanish at the same curve points.
        """
        if self.is_zero():
            return 0
        h, _ = self._hf()
        n0 = self.norm_numerator()
        n1 = self.D * self.B * h
        n2 = self.D * self.D
        content = n0.gcd(n1).gcd(n2)
        return max(n0.degree, n1.degree, n2.degree) - content.degree

    def evaluate(self, place, prec: int = 32):
        """Value at a point; INFINITY for poles."""
        infinite = place is INFINITY or (
            isinstance(place, CurvePoint) and place.is_infinity())
        if not infinite:
            dx = self.D(place.x)
            if dx != self.curve.ctx.zero:
                return (self.A(place.x) + self.B(place.x) * place.y) / dx
        s = self.expand(place, prec)
        if s.is_zero_to_prec():
            return self.curve.ctx.zero
        if s.valuation() < 0:
            return INFINITY
        return s.value_at_origin()

    def expand(self, place, prec: int = 32) -> Series:
        """Laurent expansion in the local uniformizer at `place`."""
        X, Y = xy_expansion(self.curve, place, prec + 8)
        ctx = self.curve.ctx

        def ev(poly):
            v = poly(X)
            if isinstance(v, FieldElement):
                return Series.constant(v, X.prec)
            return v

        num = ev(self.A) + ev(self.B) * Y
        den = ev(self.D)
        if den.is_zero_to_prec():
            raise PrecisionError("denominator vanishes to working precision")
        if num.is_zero_to_prec():
            return Series(ctx, num.val - den.valuation(), [])
        return num / den

    def to_json(self):
        return {"A": [format(c, "x") for c in self.A.coeffs],
                "B": [format(c, "x") for c in self.B.coeffs],
                "D": [format(c, "x") for c in self.D.coeffs],
                "d": self.curve.ctx.degree}


# ---------------------------------------------------------------------------
# Miller functions


def _line_through(P: CurvePoint, Q: CurvePoint) -> CurveFunction:
    """A function with divisor (P) + (Q) + (-(P+Q)) - 3(O)."""
    E = P.curve
    ctx = E.ctx
    if P.is_infinity() or Q.is_infinity():
        raise ValueError("lines require affine operands")
    if P.x == Q.x and (P != Q or P.y == Q.y + E.hpoly(P.x)):
        # vertical: P + Q = O (covers P = -Q, including 2-torsion doubling)
        return CurveFunction(E, Poly(ctx, [P.x, ctx.one]), 0, 1)
    if P == Q:
        lam = (P.x * P.x + E.a4 + E.a1 * P.y) / E.hpoly(P.x)
    else:
        lam = (P.y + Q.y) / (P.x + Q.x)
    nu = P.y + lam * P.x
    return CurveFunction(E, Poly(ctx, [nu, lam]), Poly.one(ctx), 1)


def _vertical_at(S: CurvePoint) -> CurveFunction:
    E = S.curve
    if S.is_infinity():
        return CurveFunction.constant(E, 1)
    return CurveFunction(E, Poly(E.ctx, [S.x, E.ctx.one]), 0, 1)


def _miller_accumulate(P: CurvePoint, n: int) -> CurveFunction:
    """f with divisor n(P) - (nP) - (n-1)(O); no constraint on nP.

    Double-and-add accumulation of chord and vertical lines.
    """
    if P.is_infinity():
        raise ValueError("the base point must be affine")
    if n < 1:
        raise ValueError("n must be positive")
    E = P.curve
    f = CurveFunction.constant(E, 1)
    T = P
    for bit in bin(n)[3:]:
        line = _line_through(T, T)
        T = T + T
        f = f * f * line / _vertical_at(T)
        if bit == "1":
            line = _line_through(T, P)
            T = T + P
            f = f * line / _vertical_at(T)
    return f


def miller_function(P: CurvePoint, n: int) -> CurveFunction:
    """f with divisor exactly n(P) - n(O), for an n-torsion point P."""
    if not P.is_infinity() and not (n * P).is_infinity():
        raise ValueError("n*P must be the identity for a degree-n cover")
    return _miller_accumulate(P, n)


# ---------------------------------------------------------------------------
# ramification


def _expand_shifted(func: CurveFunction, value, place, prec: int) -> Series:
    """Series of func - value (or 1/func when value is INFINITY) at place."""
    if value is INFINITY:
        return func.inverse().expand(place, prec)
    # subtraction is addition here
    return (func + value).expand(place, prec)


def _with_precision(compute, start: int = 32, cap: int = 512):
    prec = start
    while True:
        try:
            return compute(prec)
        except PrecisionError:
            if prec >= cap:
                raise
            prec *= 2


def uniformizer_tag(curve: WeierstrassCurve, place) -> str:
    """Which uniformizer rule applies at the place.

    X - x0 wherever the curve equation solves for Y (h(x0) != 0), Y - y0 at
    the exceptional affine points, X/Y at the point at infinity.
    """
    if place is INFINITY or place.is_infinity():
        return "x_over_y_at_infinity"
    if curve.hpoly(place.x) != curve.ctx.zero:
        return "x_minus_x0"
    return "y_based"


class LocalExpansion:
    """Truncated t-adic expansion of a curve function at one place.

    coefficients[k] multiplies t^k for 0 <= k < precision.  A pole is stored
    as the expansion of 1/f with `inverted` set, so the coefficient list
    always starts at exponent 0; valuation() undoes the inversion.
    """

    __slots__ = ("center", "uniformizer_tag", "coefficients", "precision",
                 "inverted")

    def __init__(self, center, tag: str, coefficients, precision: int,
                 inverted: bool = False):
        self.center = center
        self.uniformizer_tag = tag
        self.coefficients = list(coefficients)
        self.precision = precision
        self.inverted = inverted

    def valuation(self) -> int:
        for k, c in enumerate(self.coefficients):
            if c.bits:
                return -k if self.inverted else k
        raise PrecisionError("all coefficients vanish to working precision")

    def to_json(self):
        return {"center": INFINITY.to_json() if self.center is INFINITY
                else self.center.to_json(),
                "uniformizer": self.uniformizer_tag,
                "coefficients": [c.to_json()["hex"] for c in self.coefficients],
                "precision": self.precision,
                "inverted": self.inverted}

    def __repr__(self):
        return "LocalExpansion(%r, %s, prec=%d)" % (
            self.uniformizer_tag, self.coefficients, self.precision)


def local_expand(func: CurveFunction, place, m: int) -> LocalExpansion:
    """Expansion of func at the place to precision m (coefficients 0..m-1)."""
    if not 1 <= m <= 64:
        raise ValueError("precision must be between 1 and 64")
    if func.is_zero():
        raise ValueError("the zero function has no valuation")

    def compute(prec):
        s = func.expand(place, prec)
        if s.valuation() < 0:
            s = func.inverse().expand(place, prec)
            inverted = True
        else:
            inverted = False
        if s.prec < m:
            raise PrecisionError("series window shorter than requested")
        return s, inverted

    series, inverted = _with_precision(compute, start=max(32, 2 * m))
    tag = uniformizer_tag(func.curve, place)
    coeffs = [series.coeff(k) for k in range(m)]
    return LocalExpansion(place, tag, coeffs, m, inverted)


def ramification_index(func: CurveFunction, place, prec: int = 32) -> int:
    """e = v_Q(func - func(Q)), the local degree of the cover at Q."""
    value = func.evaluate(place, prec)

    def compute(p):
        return _expand_shifted(func, value, place, p).valuation()

    return _with_precision(compute, prec)


def different_exponent(func: CurveFunction, place, prec: int = 32) -> int:
    """d = v_t(ds/dt) for s the pullback of a uniformizer below.

    s is func - func(Q) at finite values and 1/func at poles.  Odd
    (tame) ramification gives d = e - 1; even indices are wild and carry
    the extra conductor the series computes.
    """
    value = func.evaluate(place, prec)

    def compute(p):
        s = _expand_shifted(func, value, place, p)
        return s.deriv().valuation()

    return _with_precision(compute, prec)


def fiber(func: CurveFunction, value, prec: int = 32):
    """All rational points with func = value, as [(point, e)] sorted.

    Raises FiberEscapeError when the multiplicities do not add up to the
    degree of the cover, i.e. part of the fiber lives in an extension field.
    """
    E = func.curve
    ctx = E.ctx
    n = func.degree()
    if n == 0:
        raise ValueError("constant functions have no finite fibers")
    h, _ = func._hf()
    candidates_x = set()
    if value is INFINITY:
        for r, _m in poly_roots(func.D):
            candidates_x.add(r.bits)
    else:
        c = ctx(value)
        AcD = func.A + func.D * c
        norm_c = AcD * AcD + AcD * func.B * h + func.B * func.B * \
            Poly(ctx, [E.a6, E.a4, E.a2, ctx.one])
        if norm_c.is_zero():
            raise ValueError("function is identically the requested value")
        for r, _m in poly_roots(norm_c):
            candidates_x.add(r.bits)
        for r, _m in poly_roots(func.D):
            candidates_x.add(r.bits)
    hits = []
    total = 0
    for xb in sorted(candidates_x):
        x0 = ctx(xb)
        for y0 in E.fiber_y(x0):
            Q = E.point(x0, y0)
            if func.evaluate(Q, prec) != value:
                continue
            def compute(p, Q=Q):
                return _expand_shifted(func, value, Q, p).valuation()
            e = _with_precision(compute, prec)
            hits.append((Q, e))
            total += e
    O = E.infinity()
    if func.evaluate(O, prec) == value:
        def compute(p):
            return _expand_shifted(func, value, O, p).valuation()
        e = _with_precision(compute, prec)
        hits.append((O, e))
        total += e
    if total != n:
        raise FiberEscapeError(
            f"fiber over {value!r} accounts for {total} of {n} sheets",
            leftover=n - total)
    return hits


def ramification_profile(func: CurveFunction, branch_values, prec: int = 32):
    """Certified ramification data over the claimed branch values.

    Returns {value: [(point, e, d), ...]} where e is the ramification index
    and d the different exponent.  The certificate checks that every fiber
    is fully rational, that tame points satisfy d = e - 1, and that the
    summed different reaches 2 deg(func) exactly, which Riemann-Hurwitz
    forces for a cover of the line by a genus-one curve.  Ramification found
    outside the claimed values falsifies the profile.
    """
    E = func.curve
    n = func.degree()
    out = {}
    total_d = 0
    seen_points = set()
    for value in branch_values:
        key = value if value is INFINITY else E.ctx(value)
        entries = []
        for Q, e in fiber(func, key, prec):
            d = different_exponent(func, Q, prec) if e > 1 else 0
            if e % 2 == 1 and e > 1 and d != e - 1:
                raise VerificationError(
                    f"tame point reports d={d}, expected {e - 1}")
            entries.append((Q, e, d))
            seen_points.add(Q)
            total_d += d
        out[key] = entries
    if total_d > 2 * n:
        raise VerificationError("different exceeds the Riemann-Hurwitz total")
    if total_d < 2 * n:
        # hunt for ramification the claim missed: critical points of the
        # X-derivative, two-torsion fibers, and the origin
        suspects = _ramification_suspects(func, prec)
        extra = []
        for Q in suspects:
            if Q in seen_points:
                continue
            e = ramification_index(func, Q, prec)
            if e > 1:
                v = func.evaluate(Q, prec)
                extra.append((Q, v, e))
        report = {
            "degree": n,
            "claimed_total": total_d,
            "required_total": 2 * n,
            "extra_ramification": extra,
        }
        raise ProfileFalsified(
            f"different sums to {total_d}, Riemann-Hurwitz needs {2 * n}",
            report=report)
    return out


def differentiate(func: CurveFunction) -> CurveFunction:
    """d(func)/dX, using dY/dX = (X^2 + a4 + a1 Y)/h."""
    E = func.curve
    h, _ = func._hf()
    A, B, D = func.A, func.B, func.D
    Ad, Bd, Dd = A.deriv(), B.deriv(), D.deriv()
    ysel = Poly(E.ctx, [E.a4, 0, E.ctx.one])  # X^2 + a4
    a1p = Poly(E.ctx, [E.a1])
    # quotient rule times h to clear the dY/dX denominator
    new_A = h * Ad * D + B * ysel * D + h * Dd * A
    new_B = h * Bd * D + a1p * B * D + h * Dd * B
    return CurveFunction(E, new_A, new_B, h * D * D)


def _ramification_suspects(func: CurveFunction, prec: int):
    """Rational points that could carry ramification of func."""
    E = func.curve
    ctx = E.ctx
    pts = [E.infinity()]
    xs = set()
    dfunc = differentiate(func)
    if not dfunc.is_zero():
        for r, _m in poly_roots(dfunc.norm_numerator()):
            xs.add(r.bits)
    # two-torsion x-coordinates: the X-uniformizer heuristic is blind there
    hpoly = Poly(ctx, [E.a3, E.a1])
    if hpoly.degree >= 1:
        for r, _m in poly_roots(hpoly):
            xs.add(r.bits)
    for r, _m in poly_roots(func.D):
        xs.add(r.bits)
    for xb in sorted(xs):
        x0 = ctx(xb)
        for y0 in E.fiber_y(x0):
            pts.append(E.point(x0, y0))
    return pts
