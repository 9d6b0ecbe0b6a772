"""Small helpers shared by the demo scripts."""

import itertools

import multary as m


def left_division(h):
    """(y2..yr, c) -> the y1 with h(y1, y2..yr) = c."""
    table = []
    for args in itertools.product(range(h.order), repeat=h.arity):
        table.append(h.solve(1, args[:-1], args[-1]))
    return m.MultaryQuasigroup(h.arity, h.order, tuple(table))
