"""The characteristic-zero census of cyclic triples.

Covers of the line with branch datum (n:n:3,1,...,1) correspond over a
field of characteristic zero to cyclic classes of positive triples
(a, b, c) with a + b + c = n.  Signature-1 primitive classes are counted
by psi(n)/24 for odd n > 3, matching the characteristic-2 class counts
order by order.
"""

from lame2 import (enumerate_triples, expected_class_count,
                   lifting_count_check, psi)

print("degree 9, primitive classes:")
for t in enumerate_triples(9, primitive_only=True):
    tag = "signature 1" if t.signature == 1 else "signature 0"
    print(f"  ({t.a}, {t.b}, {t.c})   {tag}")

print()
print("signature-1 primitive counts vs psi(n)/24:")
for n in (3, 5, 9, 15, 35, 99):
    got = len(enumerate_triples(n, signature=1, primitive_only=True))
    print(f"  n = {n:2d}: {got:3d}  expected {expected_class_count(n):3d}"
          f"  (psi = {psi(n)})")

print()
report = lifting_count_check(9)
print("lifting check at n = 9:")
for m, entry in report["per_order"].items():
    print(f"  order {m}: {entry['signature_one_triples']} triples, "
          f"{entry.get('char2_classes', '-')} torsion classes")
print(f"  cumulative {report['cumulative']} = order-dividing count "
      f"{report['order_dividing_classes']}")
