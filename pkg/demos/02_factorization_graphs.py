"""Factorization graphs: where associativity lives.

A factorization f(x1,...,xk) = g(..., h(x_{i+1},...,x_j), ...) on
consecutive variables is recorded as the chord {v_i, v_j} on the cycle
C_{k+1}.  Fully reducible operations (iterated groups) have complete
graphs; irreducible operations have none.
"""

import multary as m
from multary.factorization import Segment

z4, v4 = m.cyclic(4), m.klein_four()

print("== The fully reducible extreme ==")
q = m.iterated_group(m.cyclic(3), 3)
graph = m.factorization_graph(q)
print("iterated Z3, arity 3:", graph.chord_line(), "| complete:", graph.is_complete())

print()
print("== A mixed example: V4 outside, Z4 inside ==")
tw = m.compose(m.iterated_group(v4, 2), m.iterated_group(z4, 2), 1)
graph = m.factorization_graph(tw)
print("V4(Z4(x1,x2), x3):", graph.chord_line())
pair = m.reducible_at(tw, Segment(0, 2))
print("inner factor at (0,2):", pair.inner.table)
print("recompose exactly:", m.compose(pair.outer, pair.inner, 1).table == tw.table)
print("segment (1,3) reduces:", m.reducible_at(tw, Segment(1, 3)) is not None)

print()
print("== The irreducible extreme ==")
irr = m.search_irreducible(3, 4, m.SearchBudget(seed=4242))
print("searched (3,4):", m.factorization_graph(irr).chord_line() or "chords:")

print()
print("== Substitutive associativity ==")
add = m.iterated_group(m.cyclic(2), 2)
print(
    "x+y associative both ways:",
    m.check_ij_associative(add, add, add, add, 1, 2),
)
print("iterated Z3 is a multary group:", m.check_multary_group(q))
nongroup = m.search_nongroup_binary(5, m.SearchBudget(seed=1001))
print("searched order-5 square is one:", m.check_multary_group(nongroup))

print()
print("== DOT output ==")
print(m.factorization_graph(tw).to_dot())
