"""Twisted attachments: when gluing two group blocks stays a group.

Composing iterated-group blocks through a bijection beta of their values
keeps an iterated group exactly when beta is a pseudoisomorphism
(an isomorphism followed by a translation).  Over Z2, Z3 and V4 every
bijection qualifies; over Z4 only 8 of the 24 do; between Z4 and V4 none
do, which is the standard recipe for nongroup quasigroups of order 4.
"""

import itertools

import multary as m

z3, z4, v4 = m.cyclic(3), m.cyclic(4), m.klein_four()

print("== Pseudoisomorphism test ==")
print("identity on Z4:", m.is_pseudoisomorphism((0, 1, 2, 3), z4, z4))
print("translation g+1:", m.is_pseudoisomorphism((1, 2, 3, 0), z4, z4))
print("swap (2,3):", m.is_pseudoisomorphism((0, 1, 3, 2), z4, z4))

print()
print("== Dichotomy over every attachment bijection ==")
for name, g1, g2 in (("Z3~Z3", z3, z3), ("Z4~Z4", z4, z4),
                     ("V4~V4", v4, v4), ("Z4~V4", z4, v4)):
    total = hits = 0
    for beta in itertools.permutations(range(g1.order)):
        total += 1
        q = m.twisted_composition(g1, g2, beta, 1)
        if m.is_iterated_group_isotope(q) is not None:
            hits += 1
    print(f"{name}: {hits}/{total} attachments give an iterated group isotope")

print()
print("== The canonical nongroup ternary of order 4 ==")
tw = m.twisted_composition(z4, v4, (0, 1, 2, 3), 1)
print("factorization graph:", m.factorization_graph(tw).chord_line())
tree = m.decompose_quasigroup(tw)
print("components:", [
    m.catalog_name(c.witness.group) for c in tree.components
])
