"""Recognizing and extracting the group behind a reducible table.

Binary tables are screened by the quadrangle criterion.  Fully reducible
multary tables yield an explicit division operation built from the
all-zeros reference assignment; multiplication falls out as
a * b = a / (e / b), and an isotopy witness is solved for and verified
against the original table entry by entry.
"""

import multary as m

print("== Quadrangle criterion ==")
z5 = m.iterated_group(m.cyclic(5), 2)
print("Z5 table passes:", m.quadrangle_criterion(z5)[0])
nongroup = m.search_nongroup_binary(5, m.SearchBudget(seed=1001))
ok, witness = m.quadrangle_criterion(nongroup)
print("searched square fails:", not ok)
print("violating configuration rows/cols:", witness.rows, witness.cols)

print()
print("== Division from a scrambled iterated group ==")
z6 = m.cyclic(6)
q = m.iterated_group(z6, 3).apply_isotopy(m.random_isotopy(6, 3, seed=5))
div = m.division_table(q)
print("division row 0:", div[0])
print("L1 a/a = 0:", all(div[a][a] == 0 for a in range(6)))
print("L4 (a/c)/(b/c) = a/b:", all(
    div[div[a][c]][div[b][c]] == div[a][b]
    for a in range(6) for b in range(6) for c in range(6)
))

witness = m.extract_group(q)
print("extracted group:", m.catalog_name(witness.group))
rebuilt = m.iterated_group(witness.group, 3).apply_isotopy(witness.isotopy)
print("witness identity, table-exact:", rebuilt.table == q.table)

print()
print("== Z4 and V4 are told apart ==")
w4 = m.extract_group(m.iterated_group(m.klein_four(), 3))
print("V4 iterate ->", m.catalog_name(w4.group))
print("isomorphic to Z4?", m.group_isomorphic(w4.group, m.cyclic(4)) is not None)

print()
print("== Recognition is a single call ==")
tw = m.twisted_composition(m.cyclic(4), m.klein_four(), (0, 1, 2, 3), 1)
print("twisted ternary recognized:", m.is_iterated_group_isotope(tw) is not None)
print("iterated S3 recognized:",
      m.catalog_name(m.is_iterated_group_isotope(
          m.iterated_group(m.catalog()["S3"], 3)).group))

print()
print("== Residual ternary screening for higher arity ==")
q4 = m.iterated_group(m.cyclic(4), 4)
print("iterated Z4, arity 4:", m.residual_ternary_test(q4))
bad4 = m.compose(m.iterated_group(m.cyclic(4), 2), tw, 2)
print("twisted 4-ary:", m.residual_ternary_test(bad4),
      "| failing fixing:", m.first_nongroup_ternary_fixing(bad4))
