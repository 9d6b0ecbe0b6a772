"""Group recognition for multary quasigroups.

Covers the quadrangle criterion for binary quasigroups, extraction of the
underlying group of a fully reducible quasigroup through an explicit
division table, recognition of iterated group isotopes, small-order group
isomorphism, and pseudoisomorphism (twist) testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import Isotopy, MultaryQuasigroup
from .errors import (
    ArityTooSmall,
    BudgetExceeded,
    CriterionFailed,
    InternalInconsistency,
    NotBinary,
    NotFullyReducible,
    OrderMismatch,
    ValueOutOfRange,
)
from .factorization import (
    FactorizationGraph,
    Segment,
    compose,
    factorization_graph,
    reducible_at,
)


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a Cayley table on {0..order-1}."""

    order: int
    table: tuple[int, ...]
    identity: int

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        MultaryQuasigroup(2, self.order, self.table)  # Latin check
        e = self.identity
        if not 0 <= e < self.order:
            raise ValueOutOfRange(f"identity {e} outside 0..{self.order - 1}")
        for x in range(self.order):
            if self.mul(e, x) != x or self.mul(x, e) != x:
                raise ValueOutOfRange(f"{e} is not a two-sided identity")
        for a in range(self.order):
            for b in range(self.order):
                ab = self.mul(a, b)
                for c in range(self.order):
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise ValueOutOfRange(
                            f"not associative at ({a}, {b}, {c})"
                        )

    def mul(self, a: int, b: int) -> int:
        return self.table[a * self.order + b]

    def inv(self, a: int) -> int:
        for b in range(self.order):
            if self.mul(a, b) == self.identity:
                return b
        raise AssertionError("group element without inverse")

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.mul(a, b) == self.mul(b, a)
            for a in range(self.order)
            for b in range(self.order)
        )

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def as_quasigroup(self) -> MultaryQuasigroup:
        return MultaryQuasigroup(2, self.order, self.table)

    def __repr__(self):
        return f"GroupTable(order={self.order}, identity={self.identity})"


def group_from_table(table) -> GroupTable:
    """Build a GroupTable from a raw Cayley table, locating the identity."""
    table = tuple(int(v) for v in table)
    order = round(len(table) ** 0.5)
    for e in range(order):
        if all(
            table[e * order + x] == x and table[x * order + e] == x
            for x in range(order)
        ):
            return GroupTable(order, table, e)
    raise ValueOutOfRange("table has no two-sided identity")


def iterated_group(group: GroupTable, arity: int) -> MultaryQuasigroup:
    """The k-ary operation x1 * x2 * ... * xk computed in the group."""
    if arity < 2:
        raise ArityTooSmall(f"arity must be >= 2, got {arity}")
    q = group.as_quasigroup()
    out = q
    for _ in range(arity - 2):
        out = compose(q, out, 1)
    return out


# ---------------------------------------------------------------------------
# Quadrangle criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadrangleWitness:
    """A violating configuration: three agreeing cell pairs, one breaking.

    `rows` and `cols` hold (x1, x2, x3, x4) and (y1, y2, y3, y4);
    `equations` lists four ((x, y, value), (x', y', value')) cell pairs of
    which the first three agree and the last does not.
    """

    rows: tuple[int, int, int, int]
    cols: tuple[int, int, int, int]
    equations: tuple


def quadrangle_criterion(q: MultaryQuasigroup):
    """Latin-square test for being a group isotope.

    Whenever a(x1,y1) = a(x2,y2), a(x1,y3) = a(x2,y4) and
    a(x3,y1) = a(x4,y2), the criterion demands a(x3,y3) = a(x4,y4).
    Returns (True, None) or (False, witness) for the first violation in
    scan order.
    """
    if q.arity != 2:
        raise NotBinary(f"quadrangle criterion needs arity 2, got {q.arity}")
    g = q.order
    a = q.array
    # col_solve[x][v] = y with a(x, y) = v;  row_solve[y][v] = x.
    col_solve = np.empty((g, g), dtype=np.int64)
    row_solve = np.empty((g, g), dtype=np.int64)
    for x in range(g):
        col_solve[x, a[x, :]] = np.arange(g)
    for y in range(g):
        row_solve[a[:, y], y] = np.arange(g)

    for x1 in range(g):
        for x2 in range(g):
            for y1 in range(g):
                y2 = col_solve[x2, a[x1, y1]]
                for y3 in range(g):
                    y4 = col_solve[x2, a[x1, y3]]
                    for x3 in range(g):
                        x4 = row_solve[a[x3, y1], y2]
                        if a[x3, y3] != a[x4, y4]:
                            w = QuadrangleWitness(
                                rows=(x1, x2, x3, int(x4)),
                                cols=(int(y1), int(y2), int(y3), int(y4)),
                                equations=(
                                    ((x1, y1, int(a[x1, y1])), (x2, int(y2), int(a[x2, y2]))),
                                    ((x1, y3, int(a[x1, y3])), (x2, int(y4), int(a[x2, y4]))),
                                    ((x3, y1, int(a[x3, y1])), (int(x4), int(y2), int(a[x4, y2]))),
                                    ((x3, y3, int(a[x3, y3])), (int(x4), int(y4), int(a[x4, y4]))),
                                ),
                            )
                            return False, w
    return True, None


# ---------------------------------------------------------------------------
# Division construction
# ---------------------------------------------------------------------------


def _prefix_factors(q: MultaryQuasigroup) -> dict[tuple[int, int], MultaryQuasigroup | None]:
    """Canonical inner factor for every node pair (i, j), 0 <= i < j <= k.

    Adjacent pairs carry the single variable between them (marked None);
    the pair (0, k) carries q itself; every chord carries the inner factor
    of its segment.  Requires full reducibility.
    """
    k = q.arity
    out: dict[tuple[int, int], MultaryQuasigroup | None] = {}
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            if j == i + 1:
                out[(i, j)] = None
            elif (i, j) == (0, k):
                out[(i, j)] = q
            else:
                pair = reducible_at(q, Segment(i, j))
                if pair is None:
                    raise NotFullyReducible(
                        f"no factorization at segment ({i}, {j})"
                    )
                out[(i, j)] = pair.inner
    return out


def division_table(q: MultaryQuasigroup) -> tuple[tuple[int, ...], ...]:
    """Division derived from the all-zeros reference assignment.

    Entry [a][b] is a/b.  The table satisfies the four division identities

        (L1) a/a = e        (L2) a/e = a
        (L3) e/(b/c) = c/b  (L4) (a/c)/(b/c) = a/b

    with e = 0, from which group multiplication is a * b = a/(e/b).

    The construction labels every edge fiber of the factorization
    structure through the hub node v0: the hub edge (0, j) carries the
    prefix factor value, and the label of a non-hub fiber value is the hub
    value forced by the triangle closing over the reference assignment.
    Division a/b is then the label of the fiber value forced by putting a
    and b on two hub edges.  All node pairs must give the same table;
    disagreement means the factorization structure is inconsistent.
    """
    k, g = q.arity, q.order
    if k == 2:
        ok, _ = quadrangle_criterion(q)
        if not ok:
            raise CriterionFailed("quadrangle criterion fails")
    else:
        graph = factorization_graph(q)
        if not graph.is_complete():
            raise NotFullyReducible(
                f"factorization graph is incomplete: {graph.chord_line()}"
            )
    factors = _prefix_factors(q)

    # zeta[j][a] = value on hub edge (0, j) when x1 = a and the rest of the
    # prefix is 0; a bijection, so psi[j] is its inverse.
    zeta: dict[int, np.ndarray] = {1: np.arange(g)}
    for j in range(2, k + 1):
        arr = factors[(0, j)].array
        zeta[j] = np.array(arr[(slice(None),) + (0,) * (j - 1)])
    ref = {j: int(zeta[j][0]) for j in range(1, k + 1)}

    # labels[(i, j)][d] = hub label of value d on the {i, j} fiber, read
    # from hub edge (0, i) while the reference value sits on (0, j).  The
    # two orders give different labelings of the same fiber.  The label
    # must not depend on which inner tuple represents d.
    def class_fold(per_tuple: np.ndarray, h: MultaryQuasigroup | None, where):
        if h is None:
            return per_tuple
        classes = h.array.reshape(-1)
        lab = np.empty(g, dtype=np.int64)
        for d in range(g):
            vals = np.unique(per_tuple[classes == d])
            if len(vals) != 1:
                raise InternalInconsistency(
                    f"label on fiber {where} depends on the class "
                    f"representative of {d}"
                )
            lab[d] = vals[0]
        return lab

    labels: dict[tuple[int, int], np.ndarray] = {}
    for lo in range(1, k + 1):
        for hi in range(lo + 1, k + 1):
            h = factors[(lo, hi)]
            h0hi = factors[(0, hi)].array
            # Read from (0, lo): solve x1 so the triangle closes on ref.
            idx = (slice(None),) + (0,) * (lo - 1) + (slice(None),) * (hi - lo)
            span = h0hi[idx].reshape(g, g ** (hi - lo))
            u1_for_w = np.argmax(span == ref[hi], axis=0)
            labels[(lo, hi)] = class_fold(u1_for_w, h, (lo, hi))
            # Read from (0, hi): all-zeros prefix realizes the reference.
            span2 = h0hi[(0,) * lo + (slice(None),) * (hi - lo)].reshape(-1)
            psi_hi = _invert(tuple(zeta[hi]))
            val_for_w = np.array([psi_hi[v] for v in span2])
            labels[(hi, lo)] = class_fold(val_for_w, h, (hi, lo))

    def pair_division(i: int, j: int) -> tuple[tuple[int, ...], ...]:
        # a rides hub edge (0, i), b rides (0, j); the triangle through the
        # hub forces the (i, j) fiber value, whose label is a/b.
        lo, hi = min(i, j), max(i, j)
        h0hi = factors[(0, hi)].array
        idx = (
            (slice(None),)
            + (0,) * (lo - 1)
            + (slice(None),)
            + (0,) * (hi - lo - 1)
        )
        span = h0hi[idx]  # span[u1, w1] with zeros elsewhere
        w_solve = np.empty((g, g), dtype=np.int64)
        for u1 in range(g):
            w_solve[u1, span[u1]] = np.arange(g)
        h_mid = factors[(lo, hi)]
        if h_mid is None:
            fiber = np.arange(g)
        else:
            fiber = np.array(h_mid.array[(slice(None),) + (0,) * (hi - lo - 1)])
        lab = labels[(i, j)]
        out = []
        for a in range(g):
            row = []
            for b in range(g):
                u1 = a if i < j else b
                val_hi = int(zeta[j][b]) if i < j else int(zeta[i][a])
                d = int(fiber[w_solve[u1, val_hi]])
                row.append(int(lab[d]))
            out.append(tuple(row))
        return tuple(out)

    pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    division = pair_division(*pairs[0])
    for (i, j) in pairs[1:]:
        if pair_division(i, j) != division:
            raise InternalInconsistency(
                f"division from node pair ({i}, {j}) disagrees with "
                f"{pairs[0]}"
            )
    return division


@dataclass(frozen=True)
class GroupWitness:
    """Group plus isotopy with iterated_group(group, k) ^ isotopy == Q."""

    group: GroupTable
    isotopy: Isotopy

    def to_json(self) -> dict:
        name = catalog_name(self.group)
        return {
            "group": {
                "order": self.group.order,
                "identity": self.group.identity,
                "table": list(self.group.table),
                "name": name,
            },
            "isotopy": [list(m) for m in self.isotopy.maps],
        }


def extract_group(q: MultaryQuasigroup) -> GroupWitness:
    """Extract the group of a fully reducible quasigroup.

    Multiplication is derived from the division table as a * b = a/(e/b);
    the isotopy witness is then solved for and verified table-exactly.
    """
    g = q.order
    division = division_table(q)
    eps = 0
    mult = tuple(
        division[a][division[eps][b]] for a in range(g) for b in range(g)
    )
    try:
        group = GroupTable(g, mult, eps)
    except ValueOutOfRange as exc:
        raise InternalInconsistency(
            f"division-derived multiplication is not a group: {exc}"
        ) from exc

    witness_iso = _solve_isotopy(q, group)
    check = iterated_group(group, q.arity).apply_isotopy(witness_iso)
    if check.table != q.table:
        raise InternalInconsistency("isotopy witness identity failed")
    return GroupWitness(group, witness_iso)


def _solve_isotopy(q: MultaryQuasigroup, group: GroupTable) -> Isotopy:
    """Find maps with q = iterated_group(group, k) relabelled.

    Normalizing the unknown maps so that all but the output map send 0 to
    the identity turns the one-argument slices F_i(x) = q(0,..,x,..,0)
    into w(u_i(x)); the binary slice then exhibits w as an isomorphism
    from `group` onto the principal loop isotope B of q's first retract,
    which is found by brute-force search.
    """
    k, g = q.arity, q.order
    f_slices = []
    for i in range(k):
        args = [0] * k
        vals = []
        for x in range(g):
            args[i] = x
            vals.append(q.evaluate(args))
        args[i] = 0
        f_slices.append(tuple(vals))
    inv1 = _invert(f_slices[0])
    inv2 = _invert(f_slices[1])
    b_table = tuple(
        q.evaluate((inv1[p], inv2[r]) + (0,) * (k - 2))
        for p in range(g)
        for r in range(g)
    )
    try:
        b_group = group_from_table(b_table)
    except ValueOutOfRange as exc:
        raise InternalInconsistency(
            f"principal loop isotope is not a group: {exc}"
        ) from exc
    w = group_isomorphic(group, b_group, max_order=group.order)
    if w is None:
        raise InternalInconsistency(
            "division group is not isomorphic to the loop isotope"
        )
    w_inv = _invert(w)
    maps = [tuple(w)]
    for i in range(k):
        u_i = tuple(w_inv[f_slices[i][x]] for x in range(g))
        maps.append(_invert(u_i))
    return Isotopy(k, g, tuple(maps))


def _invert(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def _three_connected(graph: FactorizationGraph) -> bool:
    n = graph.node_count
    if n < 4:
        return False
    nodes = set(range(n))
    adj = {u: set(graph.neighbors(u)) for u in nodes}

    def connected(removed: set) -> bool:
        rest = nodes - removed
        if not rest:
            return True
        start = min(rest)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in rest and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen == rest

    for pair in itertools.combinations(range(n), 2):
        if not connected(set(pair)):
            return False
    return True


def is_iterated_group_isotope(q: MultaryQuasigroup) -> GroupWitness | None:
    """Decide whether q is an iterated group isotope; return the witness.

    For arity >= 3 the factorization graph decides: complete means yes.
    An incomplete but 3-connected graph would contradict the structure
    theory, so it raises InternalInconsistency.  Binary quasigroups go
    through the quadrangle criterion instead.
    """
    if q.arity == 2:
        ok, _ = quadrangle_criterion(q)
        return extract_group(q) if ok else None
    graph = factorization_graph(q)
    if graph.is_complete():
        return extract_group(q)
    if _three_connected(graph):
        raise InternalInconsistency(
            "factorization graph is 3-connected but incomplete"
        )
    return None


def residual_ternary_test(q: MultaryQuasigroup) -> bool:
    """True iff every ternary residual is an iterated group isotope.

    When that holds, recognition of q itself must succeed; the function
    asserts this rather than assuming it.
    """
    if q.arity < 3:
        raise ArityTooSmall(f"arity must be >= 3, got {q.arity}")
    if first_nongroup_ternary_fixing(q) is not None:
        return False
    if is_iterated_group_isotope(q) is None:
        raise InternalInconsistency(
            "all ternary residuals are group isotopes but recognition failed"
        )
    return True


def first_nongroup_ternary_fixing(q: MultaryQuasigroup) -> dict[int, int] | None:
    """The first fixing whose ternary residual is not a group isotope."""
    if q.arity < 3:
        raise ArityTooSmall(f"arity must be >= 3, got {q.arity}")
    if q.arity == 3:
        return {} if is_iterated_group_isotope(q) is None else None
    for positions in itertools.combinations(range(1, q.arity + 1), q.arity - 3):
        for values in itertools.product(range(q.order), repeat=len(positions)):
            fixing = dict(zip(positions, values))
            if is_iterated_group_isotope(q.residual(fixing)) is None:
                return fixing
    return None


# ---------------------------------------------------------------------------
# Isomorphism and pseudoisomorphism
# ---------------------------------------------------------------------------


def group_isomorphic(
    g1: GroupTable, g2: GroupTable, max_order: int = 16
) -> tuple[int, ...] | None:
    """Brute-force isomorphism search pruned by element orders.

    Returns the mapping as a tuple (image of each element) or None.
    """
    if g1.order != g2.order:
        raise OrderMismatch(f"orders differ: {g1.order} vs {g2.order}")
    if g1.order > max_order:
        raise BudgetExceeded(f"order {g1.order} exceeds limit {max_order}")
    if g1.order_profile != g2.order_profile:
        return None
    if g1.is_abelian != g2.is_abelian:
        return None

    n = g1.order
    orders1 = [g1.element_order(a) for a in range(n)]
    orders2 = [g2.element_order(a) for a in range(n)]
    phi = [-1] * n
    used = [False] * n
    phi[g1.identity] = g2.identity
    used[g2.identity] = True

    def propagate(assignments: list[tuple[int, int]]) -> bool:
        # Close the partial map under products; return False on conflict.
        queue = list(assignments)
        while queue:
            a, _ = queue.pop()
            for x in range(n):
                if phi[x] < 0:
                    continue
                for p, r in ((a, x), (x, a)):
                    if phi[p] < 0 or phi[r] < 0:
                        continue
                    z = g1.mul(p, r)
                    img = g2.mul(phi[p], phi[r])
                    if phi[z] < 0:
                        if used[img] or orders1[z] != orders2[img]:
                            return False
                        phi[z] = img
                        used[img] = True
                        assignments.append((z, img))
                        queue.append((z, img))
                    elif phi[z] != img:
                        return False
        return True

    def extend() -> bool:
        try:
            a = phi.index(-1)
        except ValueError:
            return True
        for b in range(n):
            if used[b] or orders2[b] != orders1[a]:
                continue
            trail: list[tuple[int, int]] = [(a, b)]
            phi[a] = b
            used[b] = True
            if propagate(trail) and extend():
                return True
            for x, y in trail:
                phi[x] = -1
                used[y] = False
        return False

    if extend():
        return tuple(phi)
    return None


def is_pseudoisomorphism(beta, g1: GroupTable, g2: GroupTable) -> bool:
    """Whether beta factors as an isomorphism followed by right translation.

    The test composes beta with the right translation by beta(e1)^-1 and
    checks the result for multiplicativity.
    """
    if g1.order != g2.order:
        raise OrderMismatch(f"orders differ: {g1.order} vs {g2.order}")
    beta = tuple(int(v) for v in beta)
    if sorted(beta) != list(range(g1.order)):
        raise ValueOutOfRange(f"{beta} is not a bijection")
    c_inv = g2.inv(beta[g1.identity])
    alpha = [g2.mul(beta[x], c_inv) for x in range(g1.order)]
    for a in range(g1.order):
        for b in range(g1.order):
            if alpha[g1.mul(a, b)] != g2.mul(alpha[a], alpha[b]):
                return False
    return True


# ---------------------------------------------------------------------------
# Small-group catalog (orders 1..8)
# ---------------------------------------------------------------------------


def cyclic(n: int) -> GroupTable:
    table = tuple((a + b) % n for a in range(n) for b in range(n))
    return GroupTable(n, table, 0)


def klein_four() -> GroupTable:
    table = tuple(a ^ b for a in range(4) for b in range(4))
    return GroupTable(4, table, 0)


def symmetric3() -> GroupTable:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        for r in perms:
            table.append(index[tuple(p[r[x]] for x in range(3))])
    return GroupTable(6, tuple(table), index[(0, 1, 2)])


def dihedral4() -> GroupTable:
    # Element a + 4b is rotation^a * flip^b with flip * rot = rot^-1 * flip.
    def mul(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        rot = (a + (c if b == 0 else -c)) % 4
        return rot + 4 * ((b + d) % 2)

    table = tuple(mul(x, y) for x in range(8) for y in range(8))
    return GroupTable(8, table, 0)


def quaternion8() -> GroupTable:
    # 0..7 = 1, i, j, k, -1, -i, -j, -k.
    base = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }

    def mul(x, y):
        ux, sx = x % 4, -1 if x >= 4 else 1
        uy, sy = y % 4, -1 if y >= 4 else 1
        u, s = base[(ux, uy)]
        return u if s * sx * sy == 1 else u + 4

    table = tuple(mul(x, y) for x in range(8) for y in range(8))
    return GroupTable(8, table, 0)


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    n1, n2 = g1.order, g2.order
    table = []
    for a in range(n1 * n2):
        for b in range(n1 * n2):
            x = g1.mul(a // n2, b // n2)
            y = g2.mul(a % n2, b % n2)
            table.append(x * n2 + y)
    return GroupTable(
        n1 * n2, tuple(table), g1.identity * n2 + g2.identity
    )


def catalog() -> dict[str, GroupTable]:
    """All groups of order at most 8 under canonical names."""
    return {
        "Z1": cyclic(1),
        "Z2": cyclic(2),
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "V4": klein_four(),
        "Z5": cyclic(5),
        "Z6": cyclic(6),
        "S3": symmetric3(),
        "Z7": cyclic(7),
        "Z8": cyclic(8),
        "Z2xZ4": direct_product(cyclic(2), cyclic(4)),
        "Z2^3": direct_product(cyclic(2), klein_four()),
        "D4": dihedral4(),
        "Q8": quaternion8(),
    }


def catalog_name(group: GroupTable) -> str | None:
    """Canonical name when the group matches the order <= 8 catalog."""
    if group.order > 8:
        return None
    fingerprint = (group.order, group.order_profile, group.is_abelian)
    for name, cand in catalog().items():
        if (cand.order, cand.order_profile, cand.is_abelian) != fingerprint:
            continue
        if group_isomorphic(group, cand) is not None:
            return name
    return None
