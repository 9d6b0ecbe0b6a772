"""Transversal designs of high strength from multary quasigroups.

A k-ary quasigroup of order g yields a design with k+1 point classes of g
points (one class per argument, the output class last) whose blocks are
the graphs of the operation.  Every transversal k-subset lies in exactly
one block (strength k, index 1).  Point ids flatten (class, value) pairs
as class * g + value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import MultaryQuasigroup
from .errors import (
    ClassSizeMismatch,
    InternalInconsistency,
    PreconditionFailed,
)


@dataclass(frozen=True)
class TransversalDesign:
    """Point classes plus blocks, with declared strength and index."""

    classes: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    strength: int
    index: int

    def __post_init__(self):
        classes = tuple(tuple(int(p) for p in c) for c in self.classes)
        blocks = tuple(
            tuple(sorted(int(p) for p in b)) for b in self.blocks
        )
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))
        if len(classes) < 3:
            raise PreconditionFailed("designs need at least 3 classes")
        sizes = {len(c) for c in classes}
        if len(sizes) != 1:
            raise ClassSizeMismatch(f"class sizes differ: {sorted(sizes)}")
        all_points = [p for c in classes for p in c]
        if len(set(all_points)) != len(all_points):
            raise PreconditionFailed("point classes overlap")

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def points_per_class(self) -> int:
        return len(self.classes[0])

    def class_of(self) -> dict[int, int]:
        out = {}
        for ci, cls in enumerate(self.classes):
            for p in cls:
                out[p] = ci
        return out


def to_design(q: MultaryQuasigroup) -> TransversalDesign:
    """Blocks are the tuples (x1, ..., xk, f(x)) as flattened point ids."""
    g, k = q.order, q.arity
    classes = tuple(tuple(c * g + v for v in range(g)) for c in range(k + 1))
    blocks = []
    for flat, value in enumerate(q.table):
        args = []
        rest = flat
        for _ in range(k):
            rest, v = divmod(rest, g)
            args.append(v)
        args.reverse()
        blocks.append(
            tuple(c * g + v for c, v in enumerate(args + [value]))
        )
    return TransversalDesign(classes, tuple(blocks), k, 1)


def verify_design(design: TransversalDesign, t: int, lam: int):
    """Exhaustive check of the two design axioms.

    Returns (True, None), or (False, counterexample) with the
    lexicographically smallest offender: ("TD1", block index, class,
    points) for a block meeting a class twice, or ("TD2", point tuple,
    count) for a transversal t-set lying in the wrong number of blocks.
    """
    if t >= design.class_count:
        raise PreconditionFailed(
            f"strength {t} must be below the class count {design.class_count}"
        )
    cls_of = design.class_of()
    for bi, block in enumerate(design.blocks):
        seen: dict[int, list[int]] = {}
        for p in block:
            if p not in cls_of:
                return False, ("TD1", bi, None, (p,))
            seen.setdefault(cls_of[p], []).append(p)
        for ci in sorted(seen):
            if len(seen[ci]) > 1:
                return False, ("TD1", bi, ci, tuple(seen[ci]))

    for subset in itertools.combinations(range(design.class_count), t):
        counts: dict[tuple[int, ...], int] = {}
        for block in design.blocks:
            by_class = {cls_of[p]: p for p in block}
            if any(ci not in by_class for ci in subset):
                continue
            key = tuple(by_class[ci] for ci in subset)
            counts[key] = counts.get(key, 0) + 1
        for pts in itertools.product(*(design.classes[ci] for ci in subset)):
            if counts.get(pts, 0) != lam:
                return False, ("TD2", pts, counts.get(pts, 0))
    return True, None


def i_compose(
    t1: TransversalDesign,
    t2: TransversalDesign,
    i: int,
    identify: tuple[int, ...] | None = None,
) -> TransversalDesign:
    """Merge class i of t1 (1-based) with class 1 of t2.

    `identify` maps positions within t1's class i to positions within
    t2's class 1 (default: by position).  Blocks of the result are the
    symmetric differences of overlapping block pairs; the merged class
    disappears.  Classes of the result are t1's remaining classes in
    order, then t2's, with points renumbered class * g + value.  Both
    inputs must be index-1 high-strength designs and the result is
    verified to be one.
    """
    for name, d in (("first", t1), ("second", t2)):
        if d.index != 1 or d.strength != d.class_count - 1:
            raise PreconditionFailed(
                f"{name} design must have index 1 and strength = classes - 1"
            )
    if not 1 <= i <= t1.class_count:
        raise PreconditionFailed(f"class index {i} not in 1..{t1.class_count}")
    merged1 = t1.classes[i - 1]
    merged2 = t2.classes[0]
    if len(merged1) != len(merged2):
        raise ClassSizeMismatch(
            f"merged classes have sizes {len(merged1)} and {len(merged2)}"
        )
    g = t1.points_per_class
    if identify is None:
        identify = tuple(range(g))
    identify = tuple(int(v) for v in identify)
    if sorted(identify) != list(range(g)):
        raise PreconditionFailed(f"{identify} is not a position bijection")

    # Relabel into the output point space; the merged fiber gets virtual
    # negative ids so it can pair blocks and then vanish.
    relabel1: dict[int, int] = {}
    relabel2: dict[int, int] = {}
    next_class = 0
    for ci, cls in enumerate(t1.classes):
        if ci == i - 1:
            continue
        for v, p in enumerate(cls):
            relabel1[p] = next_class * g + v
        next_class += 1
    for ci, cls in enumerate(t2.classes):
        if ci == 0:
            continue
        for v, p in enumerate(cls):
            relabel2[p] = next_class * g + v
        next_class += 1
    for pos, p in enumerate(merged1):
        relabel1[p] = -1 - pos
    for pos2, p in enumerate(merged2):
        pos1 = identify.index(pos2)
        relabel2[p] = -1 - pos1

    by_fiber: dict[int, list[tuple[int, ...]]] = {}
    for block in t2.blocks:
        mapped = tuple(relabel2[p] for p in block)
        key = next(p for p in mapped if p < 0)
        by_fiber.setdefault(key, []).append(
            tuple(p for p in mapped if p >= 0)
        )

    blocks = []
    for block in t1.blocks:
        mapped = [relabel1[p] for p in block]
        key = next(p for p in mapped if p < 0)
        rest = tuple(p for p in mapped if p >= 0)
        for other in by_fiber.get(key, ()):
            blocks.append(tuple(sorted(rest + other)))

    classes = tuple(
        tuple(c * g + v for v in range(g)) for c in range(next_class)
    )
    result = TransversalDesign(classes, tuple(blocks), next_class - 1, 1)
    ok, counter = verify_design(result, result.strength, 1)
    if not ok:
        raise InternalInconsistency(
            f"composed design fails verification at {counter}"
        )
    return result


def reorder_classes(
    design: TransversalDesign, perm: tuple[int, ...]
) -> TransversalDesign:
    """Move class ci to position perm[ci], renumbering points canonically."""
    if sorted(perm) != list(range(design.class_count)):
        raise PreconditionFailed(f"{perm} is not a class permutation")
    g = design.points_per_class
    relabel = {}
    for ci, cls in enumerate(design.classes):
        for v, p in enumerate(cls):
            relabel[p] = perm[ci] * g + v
    classes = tuple(
        tuple(c * g + v for v in range(g)) for c in range(design.class_count)
    )
    blocks = tuple(tuple(sorted(relabel[p] for p in b)) for b in design.blocks)
    return TransversalDesign(classes, blocks, design.strength, design.index)


def relabel_class_values(
    design: TransversalDesign, class_index: int, bijection: tuple[int, ...]
) -> TransversalDesign:
    """Permute the point values within one class (0-based index)."""
    g = design.points_per_class
    if sorted(bijection) != list(range(g)):
        raise PreconditionFailed(f"{bijection} is not a value bijection")
    cls = design.classes[class_index]
    relabel = {p: cls[bijection[v]] for v, p in enumerate(cls)}
    blocks = tuple(
        tuple(sorted(relabel.get(p, p) for p in b)) for b in design.blocks
    )
    return TransversalDesign(design.classes, blocks, design.strength, design.index)
