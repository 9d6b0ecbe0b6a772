"""Consecutive factorization of multary quasigroups.

A factorization splits f into an outer and an inner factor on consecutive
variables:

    f(x1,...,xk) = g(x1,...,xi, h(x_{i+1},...,x_j), x_{j+1},...,xk)

The segment (i, j) names the inner variables.  The factorization graph of
Q is the cycle C_{k+1} on nodes v0..vk (side e_{i-1,i} carrying variable
x_i and side e_{0k} the output) plus one chord {v_i, v_j} for every
reducible segment.  Chords are exactly the non-adjacent node pairs, so the
full segment (0, k) and length-1 segments are excluded by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MultaryQuasigroup
from .errors import (
    DimensionMismatch,
    OrderMismatch,
    PositionOutOfRange,
    SegmentOutOfRange,
)


@dataclass(frozen=True)
class Segment:
    """Inner variables x_{i+1}..x_j of a factorization, 0 <= i < j <= k."""

    i: int
    j: int

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise SegmentOutOfRange(f"need 0 <= i < j, got ({self.i}, {self.j})")

    def check(self, arity: int) -> None:
        length = self.j - self.i
        if self.j > arity or length < 2 or length > arity - 1:
            raise SegmentOutOfRange(
                f"segment ({self.i}, {self.j}) invalid for arity {arity}"
            )

    @property
    def length(self) -> int:
        return self.j - self.i


def all_segments(arity: int) -> list[Segment]:
    """Every valid segment of a k-ary operation, lexicographically."""
    out = []
    for i in range(arity):
        for j in range(i + 2, arity + 1):
            if j - i <= arity - 1:
                out.append(Segment(i, j))
    return out


def candidate_chords(node_count: int) -> list[tuple[int, int]]:
    """Non-adjacent node pairs of the cycle C_{node_count}, sorted."""
    n = node_count
    out = []
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            out.append((i, j))
    return out


@dataclass(frozen=True)
class FactorizationGraph:
    """The cycle C_{k+1} plus one chord per reducible segment."""

    node_count: int
    chords: frozenset[tuple[int, int]]

    def __post_init__(self):
        chords = frozenset((int(a), int(b)) for a, b in self.chords)
        object.__setattr__(self, "chords", chords)
        allowed = set(candidate_chords(self.node_count))
        bad = chords - allowed
        if bad:
            raise SegmentOutOfRange(f"not chords of C_{self.node_count}: {sorted(bad)}")

    @property
    def sides(self) -> list[tuple[int, int]]:
        n = self.node_count
        return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(set(self.sides) | self.chords)

    def sorted_chords(self) -> list[tuple[int, int]]:
        return sorted(self.chords)

    @property
    def bitmask(self) -> int:
        """Canonical bitset over candidate chord pairs in sorted order."""
        mask = 0
        for bit, pair in enumerate(candidate_chords(self.node_count)):
            if pair in self.chords:
                mask |= 1 << bit
        return mask

    def adjacent(self, u: int, v: int) -> bool:
        a, b = min(u, v), max(u, v)
        return (a, b) in self.chords or (a, b) in set(self.sides)

    def neighbors(self, u: int) -> list[int]:
        out = [v for v in range(self.node_count) if v != u and self.adjacent(u, v)]
        return sorted(out)

    def is_complete(self) -> bool:
        return len(self.chords) == len(candidate_chords(self.node_count))

    def chord_line(self) -> str:
        return "chords:" + "".join(f" ({i},{j})" for i, j in self.sorted_chords())

    def to_dot(self, name: str = "factorization") -> str:
        lines = [f"graph {name} {{"]
        for i in range(self.node_count):
            lines.append(f"  v{i};")
        for a, b in self.sides:
            lines.append(f"  v{a} -- v{b};")
        for a, b in self.sorted_chords():
            lines.append(f"  v{a} -- v{b} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FactorPair:
    """Inner and outer factor of one reduction; compose() reproduces f."""

    outer: MultaryQuasigroup
    inner: MultaryQuasigroup
    segment: Segment


def _inner_rows(q: MultaryQuasigroup, seg: Segment) -> np.ndarray:
    """Rows indexed by inner tuples, columns by outer tuples (both lex)."""
    k, g = q.arity, q.order
    inner_axes = list(range(seg.i, seg.j))
    arr = np.moveaxis(q.array, inner_axes, list(range(len(inner_axes))))
    return arr.reshape(g ** seg.length, g ** (k - seg.length))


def reducible_at(q: MultaryQuasigroup, seg: Segment) -> FactorPair | None:
    """Test one segment by partitioning inner tuples by induced function.

    Each inner tuple t induces a function (outer tuple -> value).  The
    quasigroup is reducible at the segment exactly when those functions
    fall into `order` distinct classes; the inner factor labels a class by
    the value taken at the all-zeros outer tuple, which makes the returned
    pair recompose to f table-exactly.
    """
    seg.check(q.arity)
    k, g = q.arity, q.order
    rows = _inner_rows(q, seg)
    classes = np.unique(rows, axis=0)
    if len(classes) != g:
        return None

    labels = rows[:, 0]  # value at all-zeros outer tuple labels the class
    inner = MultaryQuasigroup(seg.length, g, tuple(labels))

    rep = np.empty(g, dtype=np.int64)
    rep[labels] = np.arange(rows.shape[0])  # any representative per class
    outer_arity = k - seg.length + 1
    w = rows[rep]  # shape (g, g**(outer arity - 1)), label-major
    w = w.reshape((g,) * (k - seg.length + 1))
    w = np.moveaxis(w, 0, seg.i)  # label slot sits at position i+1
    outer = MultaryQuasigroup(outer_arity, g, tuple(w.reshape(-1)))
    return FactorPair(outer, inner, seg)


def factorization_graph(q: MultaryQuasigroup) -> FactorizationGraph:
    """Chord (i, j) present iff the segment (i, j) is reducible."""
    chords = set()
    for seg in all_segments(q.arity):
        if reducible_at(q, seg) is not None:
            chords.add((seg.i, seg.j))
    return FactorizationGraph(q.arity + 1, frozenset(chords))


def compose(
    g: MultaryQuasigroup, h: MultaryQuasigroup, insert_at: int
) -> MultaryQuasigroup:
    """Substitute h into argument `insert_at` (1-based) of g."""
    if g.order != h.order:
        raise OrderMismatch(f"orders differ: {g.order} vs {h.order}")
    if not 1 <= insert_at <= g.arity:
        raise PositionOutOfRange(f"insert_at {insert_at} not in 1..{g.arity}")
    new = np.take(g.array, h.array, axis=insert_at - 1)
    return MultaryQuasigroup(
        g.arity + h.arity - 1, g.order, tuple(new.reshape(-1))
    )


def check_ij_associative(g, h, g2, h2, i: int, j: int) -> bool:
    """Whether g composed at i equals g2 composed at j, table-exactly."""
    if g.order != h.order or g.order != g2.order or g.order != h2.order:
        raise DimensionMismatch("orders differ")
    if g.arity + h.arity != g2.arity + h2.arity:
        raise DimensionMismatch(
            f"compositions have arities {g.arity + h.arity - 1} "
            f"and {g2.arity + h2.arity - 1}"
        )
    left = compose(g, h, i)
    right = compose(g2, h2, j)
    return left.table == right.table


def check_multary_group(q: MultaryQuasigroup) -> bool:
    """Whether substituting q into itself gives the same table at every slot."""
    first = compose(q, q, 1)
    for i in range(2, q.arity + 1):
        if compose(q, q, i).table != first.table:
            return False
    return True


def substituted_square(q: MultaryQuasigroup) -> MultaryQuasigroup:
    """The (2k-1)-ary table q(x1,...,q(...),...); callers should first
    confirm check_multary_group(q)."""
    return compose(q, q, 1)


def rotate_chords(
    graph: FactorizationGraph, shift: int, reflect: bool = False
) -> FactorizationGraph:
    """Relabel nodes by v_m -> v_{m-shift} (plus optional reflection).

    Mirrors how the factorization graph transforms under a circular
    parastrophe of the quasigroup.
    """
    n = graph.node_count
    out = set()
    for a, b in graph.chords:
        if reflect:
            # Reverse reading sends old node t to new node (shift-1-t).
            a, b = (shift - 1 - a) % n, (shift - 1 - b) % n
        else:
            a, b = (a - shift) % n, (b - shift) % n
        out.add((min(a, b), max(a, b)))
    return FactorizationGraph(n, frozenset(out))
