"""Seeded generators and searches for test corpora.

All randomness flows through the splitmix64 stream documented in
multary.rng, so identical inputs and seed give identical tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Isotopy, MultaryQuasigroup
from .errors import BudgetExceeded, OrderMismatch, PreconditionFailed
from .factorization import compose, factorization_graph
from .groups import (
    GroupTable,
    is_iterated_group_isotope,
    is_pseudoisomorphism,
    iterated_group,
    quadrangle_criterion,
)
from .rng import SplitMix64


@dataclass(frozen=True)
class SearchBudget:
    """Candidate cap, seed, and an advisory time hint for searches."""

    max_candidates: int = 10**6
    seed: int = 0
    time_hint: float = 60.0

    def __post_init__(self):
        if self.max_candidates < 1:
            raise PreconditionFailed("max_candidates must be >= 1")


def random_isotopy(order: int, arity: int, seed: int) -> Isotopy:
    """k+1 independent Fisher-Yates permutations from one seeded stream."""
    if order < 1:
        raise PreconditionFailed(f"order must be >= 1, got {order}")
    rng = SplitMix64(seed)
    maps = tuple(rng.permutation(order) for _ in range(arity + 1))
    return Isotopy(arity, order, maps)


def relabel_output(q: MultaryQuasigroup, beta) -> MultaryQuasigroup:
    """Apply a bijection to the output values only."""
    beta = tuple(int(v) for v in beta)
    return MultaryQuasigroup(
        q.arity, q.order, tuple(beta[v] for v in q.table)
    )


def twisted_composition(
    g1: GroupTable, g2: GroupTable, beta, position: int
) -> MultaryQuasigroup:
    """Attach a g1 block into a g2 block through the bijection beta.

    The result is compose(g2 product, beta relabelling of the g1 product,
    position).  It is an iterated group isotope exactly when beta is a
    pseudoisomorphism g1 -> g2; the dichotomy is asserted on every call.
    """
    if g1.order != g2.order:
        raise OrderMismatch(f"orders differ: {g1.order} vs {g2.order}")
    inner = relabel_output(iterated_group(g1, 2), beta)
    result = compose(iterated_group(g2, 2), inner, position)
    recognized = is_iterated_group_isotope(result) is not None
    expected = is_pseudoisomorphism(beta, g1, g2)
    if recognized != expected:
        from .errors import InternalInconsistency

        raise InternalInconsistency(
            f"twist dichotomy violated: recognized={recognized}, "
            f"pseudoisomorphism={expected}"
        )
    return result


def _random_latin_table(
    arity: int, order: int, rng: SplitMix64, max_restarts: int = 64
) -> tuple[int, ...] | None:
    """One random Latin hypercube by cell-by-cell completion with restarts.

    Fills cells in index order, picking uniformly among the values still
    free on all k lines through the cell; restarts the table on dead ends.
    """
    cells = list(itertools.product(range(order), repeat=arity))
    line_index: dict = {}
    line_keys = []
    for cell in cells:
        keys = []
        for pos in range(arity):
            key = (pos,) + cell[:pos] + cell[pos + 1 :]
            if key not in line_index:
                line_index[key] = len(line_index)
            keys.append(line_index[key])
        line_keys.append(tuple(keys))

    for _ in range(max_restarts):
        used = [0] * len(line_index)
        table = []
        dead = False
        for keys in line_keys:
            taken = used[keys[0]]
            for key in keys[1:]:
                taken |= used[key]
            free = [v for v in range(order) if not (taken >> v) & 1]
            if not free:
                dead = True
                break
            v = free[rng.below(len(free))]
            table.append(v)
            bit = 1 << v
            for key in keys:
                used[key] |= bit
        if not dead:
            return tuple(table)
    return None


def random_quasigroup(
    arity: int, order: int, seed: int, max_candidates: int = 10**6
) -> MultaryQuasigroup:
    """A seeded random Latin hypercube (uniformity not claimed)."""
    rng = SplitMix64(seed)
    for _ in range(max_candidates):
        table = _random_latin_table(arity, order, rng)
        if table is not None:
            return MultaryQuasigroup(arity, order, table)
    raise BudgetExceeded("no Latin completion found")


def search_nongroup_binary(
    order: int, budget: SearchBudget | None = None
) -> MultaryQuasigroup:
    """A Latin square failing the quadrangle criterion.

    Such squares exist for every order >= 5; smaller orders are rejected
    because every square of order <= 4 is a group isotope.
    """
    if order < 5:
        raise PreconditionFailed(
            f"order {order} < 5: all such squares are group isotopes"
        )
    budget = budget or SearchBudget()
    rng = SplitMix64(budget.seed)
    for _ in range(budget.max_candidates):
        table = _random_latin_table(2, order, rng)
        if table is None:
            continue
        q = MultaryQuasigroup(2, order, table)
        ok, _ = quadrangle_criterion(q)
        if not ok:
            return q
    raise BudgetExceeded(
        f"no nongroup square of order {order} within "
        f"{budget.max_candidates} candidates"
    )


def _is_composite(n: int) -> bool:
    return n >= 4 and any(n % d == 0 for d in range(2, n))


def search_irreducible(
    arity: int, order: int, budget: SearchBudget | None = None
) -> MultaryQuasigroup:
    """A quasigroup whose factorization graph has no chord at all.

    Irreducible k-ary quasigroups of composite order >= 4 exist for every
    k >= 3; the search samples random Latin hypercubes and keeps the first
    one whose chord set verifies empty.
    """
    if arity < 3:
        raise PreconditionFailed(f"arity {arity} < 3")
    if not _is_composite(order):
        raise PreconditionFailed(
            f"order {order} is not composite >= 4 (order <= 3 forces an "
            f"iterated group isotope; prime orders are out of reach of "
            f"this construction)"
        )
    budget = budget or SearchBudget()
    rng = SplitMix64(budget.seed)
    for _ in range(budget.max_candidates):
        table = _random_latin_table(arity, order, rng)
        if table is None:
            continue
        q = MultaryQuasigroup(arity, order, table)
        if not factorization_graph(q).chords:
            return q
    raise BudgetExceeded(
        f"no irreducible ({arity}, {order}) quasigroup within "
        f"{budget.max_candidates} candidates"
    )


__all__ = [
    "SearchBudget",
    "iterated_group",
    "random_isotopy",
    "random_quasigroup",
    "relabel_output",
    "search_irreducible",
    "search_nongroup_binary",
    "twisted_composition",
]
