"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools

import pytest

import multary as m
from multary.generators import SearchBudget, relabel_output
from multary.rng import SplitMix64


@pytest.fixture(scope="session")
def z2():
    return m.cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return m.cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return m.cyclic(4)


@pytest.fixture(scope="session")
def v4():
    return m.klein_four()


@pytest.fixture(scope="session")
def z6():
    return m.cyclic(6)


@pytest.fixture(scope="session")
def twisted_ternary(z4, v4):
    """V4 outer, Z4 inner, identity attachment: g(h(x1,x2), x3)."""
    return m.compose(m.iterated_group(v4, 2), m.iterated_group(z4, 2), 1)


@pytest.fixture(scope="session")
def nongroup5():
    return m.generators.search_nongroup_binary(5, SearchBudget(seed=1001))


@pytest.fixture(scope="session")
def irreducible34():
    return m.generators.search_irreducible(3, 4, SearchBudget(seed=4242))


def naive_enumerate(arity: int, order: int):
    """Filter every possible table; the no-pruning oracle for enumerate_all."""
    size = order**arity
    out = []
    for table in itertools.product(range(order), repeat=size):
        if m.is_latin(arity, order, table):
            out.append(table)
    return out


def exhaustive_factor_search(q, seg) -> bool:
    """Literal search over all (outer, inner) quasigroup pairs.

    Returns True iff some pair composes to q at the segment.  Only
    feasible for tiny orders; this is the oracle the partition test is
    checked against.
    """
    inner_arity = seg.length
    outer_arity = q.arity - seg.length + 1
    for inner in m.enumerate_all(inner_arity, q.order):
        for outer in m.enumerate_all(outer_arity, q.order):
            if m.compose(outer, inner, seg.i + 1).table == q.table:
                return True
    return False


def inner_exhaustive_reducible(q, seg) -> bool:
    """Exhaustive search over inner factors with the outer factor derived.

    Equivalent to the full (outer, inner) search: once the inner factor is
    fixed, the outer is forced cellwise by Latin surjectivity, so it is
    enough to check that the forced table is consistent and Latin.
    """
    g = q.order
    inner_positions = range(seg.i, seg.j)
    for inner in m.enumerate_all(seg.length, g):
        ok = True
        derived: dict[tuple, int] = {}
        for args in itertools.product(range(g), repeat=q.arity):
            t = tuple(args[p] for p in inner_positions)
            outer_key = (
                args[: seg.i] + (inner.evaluate(t),) + args[seg.j :]
            )
            value = q.evaluate(args)
            if derived.setdefault(outer_key, value) != value:
                ok = False
                break
        if ok and m.is_latin(
            q.arity - seg.length + 1,
            g,
            [derived[k] for k in sorted(derived)],
        ):
            return True
    return False


def left_division(h):
    """(y2..yr, c) -> the y1 with h(y1, y2..yr) = c; test-side oracle for
    the design composition identity."""
    g = h.order
    table = []
    for args in itertools.product(range(g), repeat=h.arity):
        table.append(h.solve(1, args[:-1], args[-1]))
    return m.MultaryQuasigroup(h.arity, g, tuple(table))


def seeded_composition_tree(seed: int, max_arity: int = 5):
    """One random composition of group-derived and nongroup factors.

    Returns the composed quasigroup.  Deterministic in the seed.
    """
    rng = SplitMix64(seed)
    order = (2, 3, 4, 4, 5, 6)[rng.below(6)]
    pool = _factor_pool(order, rng)
    q = pool[rng.below(len(pool))]
    while q.arity < max_arity:
        h = pool[rng.below(len(pool))]
        if q.arity + h.arity - 1 > max_arity:
            break
        pos = 1 + rng.below(q.arity)
        q = m.compose(q, h, pos)
    return q


def _factor_pool(order: int, rng: SplitMix64):
    groups = {
        2: [m.cyclic(2)],
        3: [m.cyclic(3)],
        4: [m.cyclic(4), m.klein_four()],
        5: [m.cyclic(5)],
        6: [m.cyclic(6), m.catalog()["S3"]],
    }[order]
    pool = []
    for g in groups:
        pool.append(m.iterated_group(g, 2))
        pool.append(relabel_output(m.iterated_group(g, 2), rng.permutation(order)))
    if order >= 5:
        pool.append(
            m.generators.search_nongroup_binary(
                order, SearchBudget(seed=rng.next64())
            )
        )
    return pool
