"""Torsion points under the 24-element automorphism group.

The curve Y^2 + Y = X^3 over a binary field has automorphism group of
order 24 fixing the origin, and the explicit quotient map
rho(X, Y) = (X^4 + X)^3 collapses each orbit to a single field element.
This walk-through classifies small odd torsion and checks the counts.
"""

from lame2 import classify_torsion, lame_count_dividing, psi, rho, aut_orbit
from lame2.weierstrass import torsion_basis

for n in (3, 5, 7, 9):
    classes = classify_torsion(n)
    word = "class" if len(classes) == 1 else "classes"
    print(f"exact order {n}: psi({n}) = {psi(n)} points falling into "
          f"{len(classes)} {word}")
    for cls in classes:
        print(f"  rho = {cls.rho_value!r}  field-of-moduli degree "
              f"{cls.moduli_degree}")

print()
print("order-dividing counts, closed form vs brute classification:")
for n in (3, 5, 7, 9, 11, 13):
    print(f"  n = {n:2d}: {lame_count_dividing(n)}")

# one orbit in full: the base point (0, 0) of the 3-torsion
curve, P, _ = torsion_basis(3)
orbit = aut_orbit(curve.point(curve.ctx.zero, curve.ctx.zero))
values = {rho(T).bits for T in orbit}
print()
print(f"orbit of (0,0) has {len(orbit)} points and rho is constant on it: "
      f"{values}")
