"""Theta-completeness, block trees, and decompose/recompose round trips."""

from __future__ import annotations

import itertools

import pytest

import multary as m
from multary.errors import MalformedTree, NotThetaComplete
from multary.factorization import FactorizationGraph
from multary.structure import CIRCLE, CLIQUE, Block

from conftest import seeded_composition_tree


def graph(n, chords):
    return FactorizationGraph(n, frozenset(chords))


def test_theta_chordless_cycles_complete():
    for n in range(3, 8):
        assert m.is_theta_complete(graph(n, ())).complete


def test_theta_k4_complete():
    assert m.is_theta_complete(graph(4, {(0, 2), (1, 3)})).complete


def test_theta_c5_examples():
    assert m.is_theta_complete(graph(5, {(0, 2), (2, 4)})).complete
    # Exhaustive disjoint-path search shows this one is complete too: no
    # pair of non-adjacent nodes has three internally disjoint paths.
    assert m.is_theta_complete(graph(5, {(0, 2), (0, 3)})).complete


def test_theta_incomplete_witness():
    report = m.is_theta_complete(graph(5, {(0, 2), (1, 3)}))
    assert not report.complete
    u, v, paths = report.witness
    assert (u, v) == (0, 3)
    assert len(paths) == 3
    interiors = [set(p[1:-1]) for p in paths]
    for a, b in itertools.combinations(range(3), 2):
        assert not (interiors[a] & interiors[b])
    for p in paths:
        assert p[0] == u and p[-1] == v
        for x, y in zip(p, p[1:]):
            assert graph(5, {(0, 2), (1, 3)}).adjacent(x, y)


def test_blocks_k4_single_clique():
    bt = m.block_decomposition(graph(4, {(0, 2), (1, 3)}))
    assert bt.blocks == (Block(CLIQUE, (0, 1, 2, 3)),)
    assert bt.attachments == ()


def test_blocks_two_triangles():
    bt = m.block_decomposition(graph(4, {(0, 2)}))
    assert bt.blocks == (
        Block(CLIQUE, (0, 1, 2)),
        Block(CLIQUE, (0, 2, 3)),
    )
    assert bt.attachments == ((0, 1, (0, 2)),)


def test_blocks_chordless_c5_single_circle():
    bt = m.block_decomposition(graph(5, ()))
    assert bt.blocks == (Block(CIRCLE, (0, 1, 2, 3, 4)),)


def test_blocks_mixed_star():
    bt = m.block_decomposition(graph(6, {(0, 2), (2, 4), (0, 4)}))
    kinds = [(b.kind, b.nodes) for b in bt.blocks]
    assert (CLIQUE, (0, 2, 4)) in kinds
    assert len(bt.blocks) == 4
    assert len(bt.attachments) == 3


def test_blocks_require_theta_completeness():
    with pytest.raises(NotThetaComplete):
        m.block_decomposition(graph(5, {(0, 2), (1, 3)}))


def test_blocks_rotation_invariance():
    g0 = graph(6, {(0, 2), (2, 4)})
    bt0 = m.block_decomposition(g0)
    for s in range(1, 6):
        rotated = FactorizationGraph(
            6,
            frozenset(
                tuple(sorted(((a + s) % 6, (b + s) % 6)))
                for a, b in g0.chords
            ),
        )
        # Rotating may move chords onto cycle edges; skip such shifts.
        try:
            bt = m.block_decomposition(rotated)
        except Exception:
            continue
        relabelled = sorted(
            (b.kind, tuple(sorted((n - s) % 6 for n in b.nodes)))
            for b in bt.blocks
        )
        base = sorted(
            (b.kind, tuple(sorted(b.nodes))) for b in bt0.blocks
        )
        assert relabelled == base


def test_decompose_iterated_group_k4(z3):
    tree = m.decompose_quasigroup(m.iterated_group(z3, 4))
    assert len(tree.components) == 1
    comp = tree.components[0]
    assert comp.block == Block(CLIQUE, (0, 1, 2, 3, 4))
    assert comp.witness is not None
    assert m.group_isomorphic(comp.witness.group, z3) is not None


def test_decompose_twisted(twisted_ternary, z4, v4):
    tree = m.decompose_quasigroup(twisted_ternary)
    assert tree.blocks == (
        Block(CLIQUE, (0, 1, 2)),
        Block(CLIQUE, (0, 2, 3)),
    )
    assert tree.attachments == ((0, 1, (0, 2)),)
    names = [
        m.catalog_name(c.witness.group) for c in tree.components
    ]
    assert names == ["Z4", "V4"]
    assert m.recompose(tree).table == twisted_ternary.table


def test_decompose_irreducible_single_circle(irreducible34):
    tree = m.decompose_quasigroup(irreducible34)
    assert len(tree.components) == 1
    comp = tree.components[0]
    assert comp.block.kind == CIRCLE
    assert comp.witness is None
    assert comp.quasigroup.table == irreducible34.table


def test_decompose_nongroup_binary_component(nongroup5):
    tree = m.decompose_quasigroup(nongroup5)
    comp = tree.components[0]
    assert comp.block.kind == CLIQUE and len(comp.block.nodes) == 3
    assert comp.witness is None  # fails the quadrangle criterion


def test_recompose_round_trip_z2_k5(z2):
    q = m.iterated_group(z2, 5)
    tree = m.decompose_quasigroup(q)
    assert m.recompose(tree).table == q.table


def test_recompose_order_independent():
    q = seeded_composition_tree(12003, max_arity=5)
    tree = m.decompose_quasigroup(q)
    others = [i for i in range(len(tree.components)) if i != tree.root]
    if len(others) >= 2:
        perms = (tuple(others), tuple(reversed(others)))
    else:
        perms = (tuple(others),)
    tables = {m.recompose(tree, order=p).table for p in perms}
    assert tables == {q.table}


def test_recompose_three_block_tree_orders(z4, v4):
    # V4(Z4(x1,x2), Z4(x3,x4)): both attachments are twisted, so the two
    # cyclic layers cannot merge with the middle block.
    t = m.compose(m.iterated_group(v4, 2), m.iterated_group(z4, 2), 1)
    q = m.compose(t, m.iterated_group(z4, 2), 3)
    tree = m.decompose_quasigroup(q)
    assert len(tree.components) == 3
    others = [i for i in range(3) if i != tree.root]
    for perm in itertools.permutations(others):
        assert m.recompose(tree, order=perm).table == q.table


def test_recompose_rejects_bad_order(twisted_ternary):
    tree = m.decompose_quasigroup(twisted_ternary)
    with pytest.raises(MalformedTree):
        m.recompose(tree, order=(tree.root,))


def test_block_multiset_invariant_under_isotopy():
    q = seeded_composition_tree(555, max_arity=4)
    tree = m.decompose_quasigroup(q)

    def summary(t):
        out = []
        for c in t.components:
            name = (
                m.catalog_name(c.witness.group) if c.witness else "irreducible"
            )
            out.append((c.block.kind, len(c.block.nodes), name))
        return sorted(out)

    base = summary(tree)
    for seed in (1, 2):
        iso = m.random_isotopy(q.order, q.arity, seed)
        assert summary(m.decompose_quasigroup(q.apply_isotopy(iso))) == base


def test_theta_complete_on_generated_corpora(twisted_ternary, irreducible34):
    qs = [twisted_ternary, irreducible34]
    qs += [seeded_composition_tree(s) for s in range(7000, 7010)]
    for q in qs:
        assert m.is_theta_complete(m.factorization_graph(q)).complete


def test_tree_serialization(twisted_ternary):
    tree = m.decompose_quasigroup(twisted_ternary)
    payload = tree.to_json()
    assert payload["arity"] == 3 and payload["order"] == 4
    assert len(payload["components"]) == 2
    assert payload["components"][0]["group"]["name"] == "Z4"
    dot = tree.to_dot()
    assert "b0 -- b1" in dot
