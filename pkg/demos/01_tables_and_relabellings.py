"""Multary quasigroups as operation tables.

A k-ary quasigroup stores a k-dimensional Latin table: every line in every
coordinate direction is a permutation, so the equation f(x1,...,xk) = x0
is solvable for any single unknown.  This script walks through building
tables, solving, relabelling (isotopy), rotating variable roles
(circular parastrophy), fixing arguments (residuals), and exhaustive
enumeration.
"""

import multary as m

print("== Building tables ==")
z3 = m.cyclic(3)
q = m.iterated_group(z3, 3)  # f(x1,x2,x3) = x1 + x2 + x3 mod 3
print("ternary sum mod 3, table:", q.table)
print("f(1,1,1) =", q((1, 1, 1)))
print("solve x2 in f(1, x2, ?) = 0 given x1=1, x3=1:", q.solve(2, (1, 1), 0))

print()
print("== Validation pinpoints the first broken line ==")
try:
    m.validate(2, 2, [0, 1, 1, 1])
except m.errors.LatinViolation as exc:
    print("rejected:", exc)

print()
print("== Isotopy: relabel each coordinate and the output ==")
iso = m.random_isotopy(3, 3, seed=7)
scrambled = q.apply_isotopy(iso)
print("scrambled table:", scrambled.table)
print("undo:", scrambled.apply_isotopy(iso.inverse()).table == q.table)

print()
print("== Circular parastrophy: rotate the roles of x0..xk ==")
p = m.Parastrophe(1, m.FORWARD)
rotated = q.circular_parastrophe(p)
print("shift-1 table equals x0 - x3 - ... style reading:", rotated.table[:9])
full_cycle = q
for _ in range(q.arity + 1):
    full_cycle = full_cycle.circular_parastrophe(m.Parastrophe(1, m.FORWARD))
print("k+1 single shifts return the original:", full_cycle.table == q.table)

print()
print("== Residuals: fix arguments, arity drops ==")
r = q.residual({2: 0})
print("fix x2=0 gives the binary sum:", r.table == m.iterated_group(z3, 2).table)

print()
print("== Enumeration (lexicographic, backtracking) ==")
squares = list(m.enumerate_all(2, 3))
print("order-3 Latin squares:", len(squares))
print("first one:", squares[0].table)

print()
print("== MQT text format ==")
text = m.write_mqt(q, ("ternary sum mod 3",))
print(text)
print("round trip exact:", m.read_mqt(text).table == q.table)
