"""Seeded generators: determinism, dichotomy, and search validity."""

from __future__ import annotations

import itertools

import pytest

import multary as m
from multary.errors import OrderMismatch, PreconditionFailed
from multary.factorization import all_segments
from multary.generators import SearchBudget
from multary.rng import SplitMix64

from conftest import inner_exhaustive_reducible


def test_splitmix_reference_values():
    # Frozen stream for seed 42; any change to the update rule breaks
    # every seeded corpus, so pin the first outputs.
    rng = SplitMix64(42)
    first = [rng.next64() for _ in range(3)]
    assert first == [
        13679457532755275413,
        2949826092126892291,
        5139283748462763858,
    ]


def test_random_isotopy_determinism():
    a = m.random_isotopy(6, 3, 99)
    b = m.random_isotopy(6, 3, 99)
    assert a == b
    c = m.random_isotopy(6, 3, 100)
    assert a != c  # neighbouring seeds give different maps


def test_random_isotopy_order_one():
    iso = m.random_isotopy(1, 3, 5)
    assert all(mp == (0,) for mp in iso.maps)


def test_iterated_group_tables(z2, v4):
    q = m.iterated_group(z2, 3)
    assert q.table == tuple(a ^ b ^ c for a in (0, 1) for b in (0, 1) for c in (0, 1))
    assert m.iterated_group(v4, 2).table == v4.table


def test_iterated_group_round_trip(z6):
    q = m.iterated_group(z6, 4)
    witness = m.is_iterated_group_isotope(q)
    assert witness is not None
    assert m.group_isomorphic(witness.group, z6) is not None


def test_search_irreducible_arity_four():
    q = m.search_irreducible(4, 4, SearchBudget(seed=99))
    assert q.arity == 4
    assert not m.factorization_graph(q).chords


def test_iterated_group_graph_complete(v4):
    assert m.factorization_graph(m.iterated_group(v4, 2)).is_complete()
    assert m.factorization_graph(m.iterated_group(v4, 4)).is_complete()


def test_twisted_composition_examples(z3, z4, v4):
    q = m.twisted_composition(z4, v4, (0, 1, 2, 3), 1)
    assert m.factorization_graph(q).chords == frozenset({(0, 2)})
    assert m.is_iterated_group_isotope(q) is None
    for beta in itertools.permutations(range(3)):
        assert (
            m.is_iterated_group_isotope(m.twisted_composition(z3, z3, beta, 1))
            is not None
        )
    with pytest.raises(OrderMismatch):
        m.twisted_composition(z3, z4, (0, 1, 2), 1)


def test_twisted_composition_dichotomy_counts(z4, v4):
    # 24 bijections per pair; the group-isotope count matches the number
    # of pseudoisomorphisms exactly.
    for g1, g2, expected in ((z4, z4, 8), (z4, v4, 0), (v4, v4, 24)):
        hits = 0
        for beta in itertools.permutations(range(4)):
            q = m.twisted_composition(g1, g2, beta, 2)
            if m.is_iterated_group_isotope(q) is not None:
                hits += 1
        assert hits == expected


def test_search_nongroup_binary(nongroup5):
    ok, _ = m.quadrangle_criterion(nongroup5)
    assert not ok
    q6 = m.search_nongroup_binary(6, SearchBudget(seed=5))
    ok, _ = m.quadrangle_criterion(q6)
    assert not ok
    with pytest.raises(PreconditionFailed):
        m.search_nongroup_binary(4, SearchBudget(seed=1))


def test_search_determinism():
    a = m.search_nongroup_binary(5, SearchBudget(seed=77))
    b = m.search_nongroup_binary(5, SearchBudget(seed=77))
    assert a.table == b.table
    c = m.search_irreducible(3, 4, SearchBudget(seed=31))
    d = m.search_irreducible(3, 4, SearchBudget(seed=31))
    assert c.table == d.table


def test_search_irreducible_chordless_and_oracle(irreducible34):
    graph = m.factorization_graph(irreducible34)
    assert not graph.chords
    for seg in all_segments(3):
        assert not inner_exhaustive_reducible(irreducible34, seg)


def test_search_irreducible_preconditions():
    with pytest.raises(PreconditionFailed):
        m.search_irreducible(3, 3, SearchBudget(seed=1))
    with pytest.raises(PreconditionFailed):
        m.search_irreducible(3, 5, SearchBudget(seed=1))
    with pytest.raises(PreconditionFailed):
        m.search_irreducible(2, 4, SearchBudget(seed=1))
    with pytest.raises(PreconditionFailed):
        SearchBudget(max_candidates=0)


def test_search_budget_exhaustion():
    from multary.errors import BudgetExceeded

    # Seeds chosen so the very first candidate fails the filter.
    with pytest.raises(BudgetExceeded):
        m.search_nongroup_binary(5, SearchBudget(max_candidates=1, seed=5))
    with pytest.raises(BudgetExceeded):
        m.search_irreducible(3, 4, SearchBudget(max_candidates=1, seed=0))


def test_random_quasigroup_revalidates():
    for arity, order in ((3, 4), (2, 6)):
        for seed in range(3):
            q = m.random_quasigroup(arity, order, seed)
            assert m.is_latin(q.arity, q.order, q.table)
            assert m.random_quasigroup(arity, order, seed).table == q.table
