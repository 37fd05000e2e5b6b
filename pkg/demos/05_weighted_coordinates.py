"""Weighted moduli coordinates for a curve with a marked point.

A pair (curve, point) with the point neither the origin nor 2-torsion
moves to the normal form Y^2 + aXY + cY = X^3 + bX^2 with the point at
(0, 0); the triple [a : b : c] is then a weighted projective coordinate
of weights (1, 2, 3).  Discriminant and j-invariant are polynomial in
(a, b, c) and match the standard formulary on the nose.
"""

from fractions import Fraction

from lame2 import (WeightedPoint, classify_torsion, curve_invariants,
                   discriminant_formula, j_formula, tate_normal_form,
                   wp_equal)

p = WeightedPoint(Fraction(1), Fraction(2), Fraction(-3))
inv = curve_invariants(Fraction(1), Fraction(2), Fraction(-3),
                       Fraction(0), Fraction(0))
print(f"[1 : 2 : -3]: disc = {discriminant_formula(p)} "
      f"(standard {inv['disc']}), j = {j_formula(p)}")

# scaling by lambda acts with weights (1, 2, 3) and fixes the class
q = p.scale(Fraction(-2))
print(f"scaled by -2: coords {q.coords()}, same class: {wp_equal(p, q)}, "
      f"canonical {q.canonical().coords()}")

print()
print("every torsion-class representative lands on the j = 0 locus:")
for n in (3, 5, 7):
    for cls in classify_torsion(n):
        wp = tate_normal_form(cls.representative.curve, cls.representative)
        j = j_formula(wp)
        print(f"  n = {n}: [a:b:c] with a = 0x{wp.a.bits:x}, "
              f"j = 0x{j.bits:x}")
