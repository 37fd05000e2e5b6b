"""Field-of-moduli census: one cover class per quotient value.

Every c in F_{2^d} is the rho-value of an explicit torsion class, so
there are exactly 2^d classes with field of moduli inside F_{2^d}.  The
per-degree counts follow the Moebius-inverted count of field elements of
exact degree e; the multiplicative shortcut 2^(p^r) - 2^(p^(r-1)) agrees
on prime powers and visibly diverges at d = 6.
"""

from lame2 import degree_count_true, eta_paper, moduli_census

for d in (1, 2, 3):
    census = moduli_census(d)
    orders = sorted(c.order for c in census["classes"])
    print(f"d = {d}: {census['count']} classes, orders {orders}")
    print(f"       per-degree counts {census['by_degree']}")

print()
print("exact-degree element counts vs the multiplicative shortcut:")
for d in (2, 3, 4, 5, 6, 8, 9):
    a, b = degree_count_true(d), eta_paper(d)
    note = "" if a == b else "   <-- open question at composite d"
    print(f"  d = {d}: exact {a:4d}   shortcut {b:4d}{note}")
