"""Transversal designs: construction, verification, and i-composition."""

from __future__ import annotations

import itertools

import pytest

import multary as m
from multary.designs import TransversalDesign
from multary.errors import ClassSizeMismatch, PreconditionFailed

from conftest import left_division


def perm_to_compose_order(outer_arity: int, inner_arity: int, i: int):
    """Class order of i_compose(design(g), design(h), i) mapped onto the
    class order of to_design(compose(g, left_division(h), i))."""
    perm = []
    for t in range(i - 1):  # leading outer inputs keep their slots
        perm.append(t)
    for t in range(outer_arity - i):  # trailing outer inputs
        perm.append(i - 1 + inner_arity + t)
    perm.append(outer_arity + inner_arity - 1)  # outer output goes last
    for t in range(inner_arity - 1):  # inner inputs y2..yr
        perm.append(i - 1 + t)
    perm.append(i - 1 + inner_arity - 1)  # inner output takes the c slot
    return tuple(perm)


def test_to_design_binary_z2(z2):
    d = m.to_design(m.iterated_group(z2, 2))
    assert d.class_count == 3
    assert d.points_per_class == 2
    assert len(d.blocks) == 4
    assert m.verify_design(d, 2, 1) == (True, None)


def test_to_design_ternary_z3(z3):
    d = m.to_design(m.iterated_group(z3, 3))
    assert d.class_count == 4
    assert len(d.blocks) == 27
    assert d.strength == 3 and d.index == 1
    assert m.verify_design(d, 3, 1) == (True, None)


def test_block_count_is_order_to_arity(v4):
    q = m.iterated_group(v4, 3)
    assert len(m.to_design(q).blocks) == 4**3


def test_group_derived_design_matches_product_one_form(z3):
    # Blocks of the classical group design are the triples multiplying to
    # the identity; negating the output class of to_design gives exactly
    # that family.
    d = m.relabel_class_values(
        m.to_design(m.iterated_group(z3, 2)), 2, (0, 2, 1)
    )
    expected = set()
    for a, b, c in itertools.product(range(3), repeat=3):
        if (a + b + c) % 3 == 0:
            expected.add((a, 3 + b, 6 + c))
    assert set(d.blocks) == expected


def test_verify_design_wrong_lambda(z3):
    d = m.to_design(m.iterated_group(z3, 3))
    ok, counter = m.verify_design(d, 3, 2)
    assert not ok and counter[0] == "TD2"


def test_verify_design_detects_deleted_block(z3):
    d = m.to_design(m.iterated_group(z3, 3))
    broken = TransversalDesign(d.classes, d.blocks[1:], 3, 1)
    ok, counter = m.verify_design(broken, 3, 1)
    assert not ok
    kind, pts, count = counter
    assert kind == "TD2" and count == 0
    assert set(pts) <= set(d.blocks[0])


def test_verify_design_detects_td1():
    # Hand-built: one block takes two points from the first class.
    classes = ((0, 1), (2, 3), (4, 5))
    blocks = ((0, 1, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4))
    d = TransversalDesign(classes, blocks, 2, 1)
    ok, counter = m.verify_design(d, 2, 1)
    assert not ok and counter[0] == "TD1"


def test_i_compose_exact_identity_with_left_division(z2, z3, z4, v4):
    cases = [
        (m.iterated_group(z2, 2), m.iterated_group(z2, 2), 1),
        (m.iterated_group(z3, 2), m.iterated_group(z3, 2), 2),
        (m.iterated_group(z4, 3), m.iterated_group(v4, 2), 2),
        (m.iterated_group(v4, 2), m.iterated_group(z4, 3), 1),
    ]
    for outer, inner, i in cases:
        left = m.reorder_classes(
            m.i_compose(m.to_design(outer), m.to_design(inner), i),
            perm_to_compose_order(outer.arity, inner.arity, i),
        )
        right = m.to_design(m.compose(outer, left_division(inner), i))
        assert left.blocks == right.blocks
        assert left.classes == right.classes


def test_i_compose_matches_composition_up_to_point_relabelling(z4, v4):
    # With the merged-fiber class rotated into the inner first slot and
    # each remaining inner input relabelled by the group inverse, the
    # composed design equals the design of the composed operation.
    for outer, inner_group, i in (
        (m.iterated_group(z4, 3), z4, 2),
        (m.iterated_group(v4, 2), z4, 1),
        (m.iterated_group(z4, 2), v4, 2),
    ):
        inner = m.iterated_group(inner_group, 2)
        perm = []
        mo, r = outer.arity, inner.arity
        for t in range(i - 1):
            perm.append(t)
        for t in range(mo - i):
            perm.append(i + r - 1 + t)
        perm.append(mo + r - 1)
        for t in range(r - 1):
            perm.append(i + t)
        perm.append(i - 1)  # merged-fiber leftover plays the first input
        left = m.reorder_classes(
            m.i_compose(m.to_design(outer), m.to_design(inner), i), tuple(perm)
        )
        inverse_map = tuple(inner_group.inv(v) for v in range(4))
        for ci in range(i, i + r - 1):
            left = m.relabel_class_values(left, ci, inverse_map)
        right = m.to_design(m.compose(outer, inner, i))
        assert left.blocks == right.blocks


def test_i_compose_z2_chain_gives_iterated_design(z2):
    d2 = m.to_design(m.iterated_group(z2, 2))
    composed = m.i_compose(d2, d2, 1)
    target = m.to_design(m.iterated_group(z2, 3))
    left = m.reorder_classes(composed, perm_to_compose_order(2, 2, 1))
    assert left.blocks == target.blocks


def test_i_compose_verifies_result(z3):
    d = m.to_design(m.iterated_group(z3, 2))
    out = m.i_compose(d, d, 2)
    assert out.class_count == 4
    assert out.strength == 3 and out.index == 1
    assert m.verify_design(out, 3, 1) == (True, None)


def test_i_compose_identify_bijection(z4):
    # Merging through a nontrivial identification equals relabelling the
    # attachment class of the second design first and merging by position.
    t1 = m.to_design(m.iterated_group(z4, 2))
    t2 = m.to_design(m.iterated_group(z4, 2))
    beta = (2, 0, 3, 1)
    via_identify = m.i_compose(t1, t2, 1, identify=beta)
    inverse = tuple(beta.index(v) for v in range(4))
    relabelled = m.relabel_class_values(t2, 0, inverse)
    via_relabel = m.i_compose(t1, relabelled, 1)
    assert via_identify.blocks == via_relabel.blocks
    with pytest.raises(PreconditionFailed):
        m.i_compose(t1, t2, 1, identify=(0, 0, 1, 2))


def test_i_compose_errors(z2, z3):
    d2 = m.to_design(m.iterated_group(z2, 2))
    d3 = m.to_design(m.iterated_group(z3, 2))
    with pytest.raises(ClassSizeMismatch):
        m.i_compose(d2, d3, 1)
    with pytest.raises(PreconditionFailed):
        m.i_compose(d2, d2, 4)
    weak = TransversalDesign(d2.classes, d2.blocks, 1, 1)
    with pytest.raises(PreconditionFailed):
        m.i_compose(weak, d2, 1)


def test_td_file_round_trip(z3):
    d = m.to_design(m.iterated_group(z3, 3))
    text = m.write_td(d, ("demo",))
    back = m.read_td(text)
    assert back.blocks == d.blocks
    assert back.classes == d.classes
    assert m.write_td(back) == m.write_td(d)
