"""Quasigroups as transversal designs of high strength.

The graph of a k-ary quasigroup of order g is a design: k+1 point classes
of g points, one class per argument plus one for the output, with g**k
blocks; any k points from distinct classes lie in exactly one block
(strength k, index 1).  Composing operations corresponds to composing
designs along an identified class.
"""

import multary as m
from demos_util import left_division  # noqa: F401  (see note below)

z3 = m.cyclic(3)

print("== From table to design ==")
q = m.iterated_group(z3, 3)
d = m.to_design(q)
print(f"{d.class_count} classes x {d.points_per_class} points, "
      f"{len(d.blocks)} blocks, strength {d.strength}, index {d.index}")
print("exhaustive verification:", m.verify_design(d, 3, 1))

print()
print("== The verifier catches damage ==")
broken = m.TransversalDesign(d.classes, d.blocks[1:], 3, 1)
ok, counter = m.verify_design(broken, 3, 1)
print("one block deleted:", ok, "| counterexample:", counter)

print()
print("== Composing designs composes operations ==")
outer = m.iterated_group(z3, 2)
inner = m.iterated_group(z3, 2)
composed = m.i_compose(m.to_design(outer), m.to_design(inner), 1)
print(f"i-composition: {composed.class_count} classes, "
      f"{len(composed.blocks)} blocks, verified strength {composed.strength}")

# The composed design is exactly the design of outer composed with the
# first-argument division of inner, up to reordering classes.
perm = (2, 3, 0, 1)  # outer x2 -> y2 slot side, outer out last, etc.
left = m.reorder_classes(composed, perm)
right = m.to_design(m.compose(outer, left_division(inner), 1))
print("matches the composed operation's design:", left.blocks == right.blocks)

print()
print("== TD text format ==")
print(m.write_td(d)[:80], "...")
