"""Unique decomposition into group blocks and irreducible blocks.

The factorization graph of any quasigroup is theta-complete, so it splits
into maximal cliques and maximal chordless circles glued tree-fashion
along shared edges.  Each clique carries an iterated group, each circle an
irreducible quasigroup, and the components recompose to the original
table exactly.
"""

import multary as m

z4, v4 = m.cyclic(4), m.klein_four()

print("== Theta-completeness ==")
g = m.FactorizationGraph(5, frozenset({(0, 2), (2, 4)}))
print("C5 + {02, 24}:", m.is_theta_complete(g).complete)
bad = m.FactorizationGraph(5, frozenset({(0, 2), (1, 3)}))
report = m.is_theta_complete(bad)
print("C5 + {02, 13}:", report.complete, "| witness paths:", report.witness[2])

print()
print("== Block structure of a graph ==")
bt = m.block_decomposition(m.FactorizationGraph(6, frozenset({(0, 2), (2, 4), (0, 4)})))
for b in bt.blocks:
    print(" block:", b.kind, b.nodes)
print(" attachments:", bt.attachments)

print()
print("== Decomposing an operation ==")
tw = m.compose(m.iterated_group(v4, 2), m.iterated_group(z4, 2), 1)
tree = m.decompose_quasigroup(tw)
for c in tree.components:
    name = m.catalog_name(c.witness.group) if c.witness else "irreducible"
    print(f" {c.block.kind} {c.block.nodes}: {name}")
print(" shared edge:", tree.attachments[0][2])
print(" recompose exact:", m.recompose(tree).table == tw.table)

print()
print("== Order independence of recomposition ==")
t3 = m.compose(tw, m.iterated_group(z4, 2), 3)  # three blocks
tree3 = m.decompose_quasigroup(t3)
orders = [i for i in range(len(tree3.components)) if i != tree3.root]
a = m.recompose(tree3, order=tuple(orders))
b = m.recompose(tree3, order=tuple(reversed(orders)))
print(" two merge orders, one table:", a.table == b.table == t3.table)

print()
print("== JSON view ==")
import json

print(json.dumps(tree.to_json(), indent=1)[:400], "...")
