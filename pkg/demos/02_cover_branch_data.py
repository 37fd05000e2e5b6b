"""Certified branch data for the canonical torsion covers.

Attached to an odd-order point P is a degree-n map to the line with
divisor n(P) - n(0).  On the supersingular model the third branch point
is tame of index 3; on the ordinary model it is wild of index 2.  Both
claims are certified fiber by fiber, with the different-degree total 2n
closing the accounting.
"""

from lame2 import GF, INFINITY, cover_profile, ordinary_torsion_point
from lame2.weierstrass import torsion_basis


def show(rep):
    n = rep["n"]
    print(f"n = {n}, {rep['model']} model, certificate over GF(2^"
          f"{rep['field_degree']})")
    print(f"  third point index {rep['index']}, different exponent "
          f"{rep['different_exponent']}, "
          f"{'tame' if rep['tame'] else 'wild'}, signature "
          f"{rep['signature']}")
    for value, fib in rep["profile"].items():
        label = "oo" if value is INFINITY else f"0x{value.bits:x}"
        es = sorted((e for _pt, e, _d in fib), reverse=True)
        print(f"  fiber over {label:>8}: indices {es}")


curve, P, _ = torsion_basis(7)
show(cover_profile(P, 7))

print()
t = GF(4)(8)
curve, P, _ = ordinary_torsion_point(t, 5)
show(cover_profile(P, 5))
