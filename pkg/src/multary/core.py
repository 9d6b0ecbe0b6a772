"""Finite multary (k-ary) quasigroups as flat operation tables.

A k-ary quasigroup of order g is a map f : {0..g-1}^k -> {0..g-1} that is
uniquely solvable in every argument, i.e. every line of the table in every
coordinate direction is a permutation (the Latin property).  Tables are
stored flat in lexicographic order with x1 most significant:

    index = ((x1 * g + x2) * g + ...) * g + xk

Elements are always 0-based integers; any external labelling is the
caller's concern.  All values are immutable after construction and safe to
share across threads; enumeration streams are single-consumer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    LatinViolation,
    PositionOutOfRange,
    TooManyFixings,
    ValueOutOfRange,
    WrongLength,
)

FORWARD = "forward"
REVERSE = "reverse"


def _check_table(arity: int, order: int, table: tuple[int, ...]) -> None:
    if arity < 2:
        raise ArityMismatch(f"arity must be >= 2, got {arity}")
    if order < 1:
        raise ValueOutOfRange(f"order must be >= 1, got {order}")
    if len(table) != order**arity:
        raise WrongLength(
            f"table has {len(table)} entries, expected {order}**{arity} = "
            f"{order**arity}"
        )
    arr = np.asarray(table, dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= order):
        raise ValueOutOfRange(f"table values must lie in 0..{order - 1}")
    shaped = arr.reshape((order,) * arity)
    for pos in range(1, arity + 1):
        lines = np.moveaxis(shaped, pos - 1, -1).reshape(-1, order)
        if not (np.sort(lines, axis=1) == np.arange(order)).all():
            _raise_first_violation(arity, order, shaped)
    return


def _raise_first_violation(arity: int, order: int, shaped: np.ndarray) -> None:
    # Deterministic scan: position ascending, fixed tuple lexicographic.
    for pos in range(1, arity + 1):
        others = [a for a in range(arity) if a != pos - 1]
        for fixed in itertools.product(range(order), repeat=arity - 1):
            seen = set()
            idx = [0] * arity
            for a, v in zip(others, fixed):
                idx[a] = v
            for x in range(order):
                idx[pos - 1] = x
                val = int(shaped[tuple(idx)])
                if val in seen:
                    raise LatinViolation(pos, fixed, val)
                seen.add(val)
    raise AssertionError("vectorized Latin check disagreed with scan")


@dataclass(frozen=True)
class MultaryQuasigroup:
    """A k-ary quasigroup on {0..order-1}, stored as a flat Latin table."""

    arity: int
    order: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        _check_table(self.arity, self.order, self.table)

    @cached_property
    def array(self) -> np.ndarray:
        """The table reshaped to (order,)*arity; read-only."""
        arr = np.asarray(self.table, dtype=np.int64).reshape(
            (self.order,) * self.arity
        )
        arr.setflags(write=False)
        return arr

    def __repr__(self):
        return f"MultaryQuasigroup(arity={self.arity}, order={self.order})"

    def _check_args(self, args) -> tuple[int, ...]:
        args = tuple(int(a) for a in args)
        if len(args) != self.arity:
            raise ArityMismatch(
                f"expected {self.arity} arguments, got {len(args)}"
            )
        for a in args:
            if not 0 <= a < self.order:
                raise ValueOutOfRange(f"argument {a} outside 0..{self.order - 1}")
        return args

    def evaluate(self, args) -> int:
        """f(x1,...,xk) by table lookup."""
        args = self._check_args(args)
        idx = 0
        for a in args:
            idx = idx * self.order + a
        return self.table[idx]

    def __call__(self, *args) -> int:
        if len(args) == 1 and not isinstance(args[0], int):
            return self.evaluate(args[0])
        return self.evaluate(args)

    def solve(self, position: int, known, target: int) -> int:
        """The unique x at `position` (1-based) with f(...) = target.

        `known` lists the other k-1 arguments in coordinate order.
        Existence and uniqueness are guaranteed by the Latin property.
        """
        if not 1 <= position <= self.arity:
            raise PositionOutOfRange(f"position {position} not in 1..{self.arity}")
        known = tuple(int(a) for a in known)
        if len(known) != self.arity - 1:
            raise ArityMismatch(
                f"expected {self.arity - 1} known arguments, got {len(known)}"
            )
        for a in known:
            if not 0 <= a < self.order:
                raise ValueOutOfRange(f"argument {a} outside 0..{self.order - 1}")
        if not 0 <= int(target) < self.order:
            raise ValueOutOfRange(f"target {target} outside 0..{self.order - 1}")
        args = list(known[: position - 1]) + [0] + list(known[position - 1 :])
        for x in range(self.order):
            args[position - 1] = x
            if self.evaluate(args) == target:
                return x
        raise AssertionError("Latin property guarantees a solution")

    def apply_isotopy(self, iso: "Isotopy") -> "MultaryQuasigroup":
        """Relabel by k+1 bijections: g(y...) = a0(f(a1^-1(y1), ...))."""
        from .errors import DimensionMismatch

        if iso.arity != self.arity or iso.order != self.order:
            raise DimensionMismatch(
                f"isotopy is ({iso.arity}, {iso.order}), "
                f"quasigroup is ({self.arity}, {self.order})"
            )
        inv = [np.asarray(_invert(m), dtype=np.int64) for m in iso.maps[1:]]
        out = np.asarray(iso.maps[0], dtype=np.int64)
        new = out[self.array[np.ix_(*inv)]]
        return MultaryQuasigroup(self.arity, self.order, tuple(new.reshape(-1)))

    def circular_parastrophe(self, p: "Parastrophe") -> "MultaryQuasigroup":
        """Rotate the roles of the k+1 variables (output included).

        With the defining relation x0 = f(x1,...,xk), the result g of a
        forward shift s satisfies x_s = g(x_{s+1}, ..., x_{s-1}) with
        indices mod k+1; the reverse direction reads the cycle backwards.
        """
        n = self.arity + 1
        s = p.shift % n
        coords = np.indices((self.order,) * self.arity)
        slots = [self.array] + list(coords)  # slots[i] = value of x_i
        if p.direction == FORWARD:
            picks = [slots[(s + j) % n] for j in range(n)]
        else:
            picks = [slots[(s - j) % n] for j in range(n)]
        new = np.empty((self.order,) * self.arity, dtype=np.int64)
        new[tuple(picks[1:])] = picks[0]
        return MultaryQuasigroup(self.arity, self.order, tuple(new.reshape(-1)))

    def residual(self, fixings: dict[int, int]) -> "MultaryQuasigroup":
        """Fix some arguments (1-based position -> value); arity drops.

        At most k-2 positions may be fixed so the result is still at least
        binary.
        """
        if not fixings:
            raise TooManyFixings("at least one fixing required")
        if len(fixings) > self.arity - 2:
            raise TooManyFixings(
                f"{len(fixings)} fixings leave arity "
                f"{self.arity - len(fixings)} < 2"
            )
        idx: list = [slice(None)] * self.arity
        for pos, val in fixings.items():
            pos = int(pos)
            if not 1 <= pos <= self.arity:
                raise PositionOutOfRange(f"position {pos} not in 1..{self.arity}")
            if not isinstance(idx[pos - 1], slice):
                raise PositionOutOfRange(f"position {pos} fixed twice")
            if not 0 <= int(val) < self.order:
                raise ValueOutOfRange(f"value {val} outside 0..{self.order - 1}")
            idx[pos - 1] = int(val)
        sub = self.array[tuple(idx)]
        return MultaryQuasigroup(
            self.arity - len(fixings), self.order, tuple(sub.reshape(-1))
        )


def validate(arity: int, order: int, table) -> MultaryQuasigroup:
    """Construct a quasigroup, reporting the first Latin violation if any."""
    return MultaryQuasigroup(int(arity), int(order), tuple(table))


def is_latin(arity: int, order: int, table) -> bool:
    """Non-raising Latin check, used by naive enumeration oracles."""
    try:
        _check_table(int(arity), int(order), tuple(int(v) for v in table))
    except (WrongLength, ValueOutOfRange, LatinViolation):
        return False
    return True


def _invert(perm) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


@dataclass(frozen=True)
class Isotopy:
    """k+1 bijections a0,...,ak on {0..order-1}; a0 relabels the output."""

    arity: int
    order: int
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        maps = tuple(tuple(int(v) for v in m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) != self.arity + 1:
            raise ArityMismatch(
                f"need {self.arity + 1} maps, got {len(maps)}"
            )
        for m in maps:
            if sorted(m) != list(range(self.order)):
                raise ValueOutOfRange(f"map {m} is not a permutation")

    @classmethod
    def identity(cls, arity: int, order: int) -> "Isotopy":
        ident = tuple(range(order))
        return cls(arity, order, tuple(ident for _ in range(arity + 1)))

    def inverse(self) -> "Isotopy":
        return Isotopy(self.arity, self.order, tuple(_invert(m) for m in self.maps))

    def is_identity(self) -> bool:
        ident = tuple(range(self.order))
        return all(m == ident for m in self.maps)


@dataclass(frozen=True)
class Parastrophe:
    """A circular relabelling of variable roles: shift plus direction.

    Only circular parastrophy is supported; arbitrary permutations of the
    operands are out of scope.  The shift is interpreted mod k+1 when the
    parastrophe is applied to a k-ary quasigroup.
    """

    shift: int
    direction: str = FORWARD

    def __post_init__(self):
        if self.direction not in (FORWARD, REVERSE):
            raise ValueOutOfRange(f"direction must be forward/reverse")

    def inverse(self, arity: int) -> "Parastrophe":
        n = arity + 1
        if self.direction == FORWARD:
            return Parastrophe((-self.shift) % n, FORWARD)
        return Parastrophe(self.shift % n, REVERSE)

    def compose(self, other: "Parastrophe", arity: int) -> "Parastrophe":
        """The parastrophe equivalent to applying self, then other."""
        n = arity + 1
        if self.direction == FORWARD and other.direction == FORWARD:
            return Parastrophe((self.shift + other.shift) % n, FORWARD)
        if self.direction == FORWARD and other.direction == REVERSE:
            return Parastrophe((self.shift + other.shift) % n, REVERSE)
        if self.direction == REVERSE and other.direction == FORWARD:
            return Parastrophe((self.shift - other.shift) % n, REVERSE)
        return Parastrophe((self.shift - other.shift) % n, FORWARD)


def enumerate_all(arity: int, order: int, guard: int = 10**6):
    """Yield every (arity, order) quasigroup in lexicographic table order.

    Backtracking fills cells in index order and prunes as soon as a partial
    line repeats a value.  `guard` bounds order**(arity+1) and is checked
    eagerly; raise it explicitly for larger enumerations.
    """
    if arity < 2:
        raise ArityMismatch(f"arity must be >= 2, got {arity}")
    if order < 1:
        raise ValueOutOfRange(f"order must be >= 1, got {order}")
    if order ** (arity + 1) > guard:
        raise BudgetExceeded(
            f"order**(arity+1) = {order**(arity + 1)} exceeds guard {guard}"
        )
    return _enumerate_tables(arity, order)


def _enumerate_tables(arity: int, order: int):
    size = order**arity
    cells = list(itertools.product(range(order), repeat=arity))
    # For each cell and coordinate, the key of the line it lies on.
    line_keys: list[tuple[int, ...]] = []
    line_index: dict = {}
    for cell in cells:
        keys = []
        for pos in range(arity):
            key = (pos,) + cell[:pos] + cell[pos + 1 :]
            if key not in line_index:
                line_index[key] = len(line_index)
            keys.append(line_index[key])
        line_keys.append(tuple(keys))

    used = [0] * len(line_index)  # bitmask of values used on each line
    table = [0] * size
    next_try = [0] * (size + 1)  # first value to try at each cell
    i = 0
    while True:
        if i == size:
            yield MultaryQuasigroup(arity, order, tuple(table))
            i -= 1
            bit = 1 << table[i]
            for key in line_keys[i]:
                used[key] &= ~bit
            next_try[i] = table[i] + 1
            continue
        keys = line_keys[i]
        taken = 0
        for key in keys:
            taken |= used[key]
        v = next_try[i]
        while v < order and (taken >> v) & 1:
            v += 1
        if v == order:
            next_try[i] = 0
            i -= 1
            if i < 0:
                return
            bit = 1 << table[i]
            for key in line_keys[i]:
                used[key] &= ~bit
            next_try[i] = table[i] + 1
        else:
            table[i] = v
            bit = 1 << v
            for key in keys:
                used[key] |= bit
            i += 1
            next_try[i] = 0
