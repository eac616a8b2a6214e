"""Decorated trees and forests: canonical forms, statistics, enumeration
against a coproduct table, poset views, and corolla cuts."""

import random
from collections import Counter
from itertools import permutations, product as iter_product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfforest.algebra import mono
from hopfforest.errors import InputError
from hopfforest.trees import (
    DecoratedTree,
    Forest,
    PosetView,
    canonicalize,
    corolla_cuts,
    enumerate_forests,
    enumerate_trees,
    forest,
    forest_notation,
    height,
    leaf,
    node,
    structure_key,
    tree_coefficient,
    tree_multiplicity,
    tree_notation,
    tree_stats,
    vertex_count,
    vertex_monomial,
    view_of,
)


def example_tree():
    """Six vertices, two terminal corollas under the root."""
    return node(6, 1, [node(2, 1, [leaf(1)]), node(3, 1, [leaf(1), leaf(1)])])


@st.composite
def decorated_trees(draw, depth=3, width=3):
    if depth == 0 or draw(st.booleans()):
        return leaf(draw(st.integers(1, 4)))
    n = draw(st.integers(1, width))
    kids = [draw(decorated_trees(depth=depth - 1, width=width)) for _ in range(n)]
    return node(draw(st.integers(1, 4)), draw(st.integers(1, 4)), kids)


def test_construction_rules():
    with pytest.raises(InputError):
        DecoratedTree(2, 1, ())  # a leaf carries one decoration
    with pytest.raises(InputError):
        node(2, 1, [])
    with pytest.raises(InputError):
        leaf(0)
    with pytest.raises(InputError):
        node(2, True, [leaf(1)])
    assert leaf(3).is_leaf
    assert not example_tree().is_leaf


def test_children_are_sorted_at_construction():
    a = node(3, 1, [leaf(2), node(2, 1, [leaf(1)])])
    b = node(3, 1, [node(2, 1, [leaf(1)]), leaf(2)])
    assert a == b
    assert [c.source for c in a.children] == [2, 2]
    assert not a.children[0].is_leaf  # (2,1,...) sorts before (2,2)


@settings(max_examples=80)
@given(decorated_trees(), st.integers(0, 2**30))
def test_canonical_form_ignores_child_order(t, seed):
    rng = random.Random(seed)

    def shuffled(u):
        kids = [shuffled(c) for c in u.children]
        rng.shuffle(kids)
        return DecoratedTree(u.source, u.left, tuple(kids))

    assert shuffled(t) == t
    assert canonicalize(t) == t
    assert structure_key(t) == structure_key(canonicalize(t))


def test_notation():
    assert tree_notation(example_tree()) == (
        "N(6;1)[N(2;1)[L(1)],N(3;1)[L(1),L(1)]]"
    )
    assert forest_notation(forest(leaf(2), leaf(1))) == "L(1)*L(2)"
    assert forest_notation(Forest(())) == "1"
    assert str(example_tree()).startswith("N(6;1)")


def test_statistics(fdb6):
    t = example_tree()
    assert vertex_count(t) == 6
    assert height(t) == 3
    assert vertex_monomial(t) == mono(1, 1, 1, 1, 1, 1)
    assert tree_coefficient(t, fdb6) == 315  # 35 * 3 * 3
    assert tree_stats(t, fdb6) == (6, 3, 315, mono(1, 1, 1, 1, 1, 1))

    f = forest(leaf(2), node(2, 1, [leaf(1)]))
    assert vertex_count(f) == 3
    assert height(f) == 2
    assert height(Forest(())) == 0
    assert vertex_monomial(f) == mono(2, 1, 1)
    assert tree_coefficient(f, fdb6) == 3


def test_unrealized_vertex_gives_zero_coefficient(fdb6):
    assert tree_coefficient(node(3, 3, [leaf(1)]), fdb6) == 0
    assert tree_coefficient(node(2, 1, [leaf(2)]), fdb6) == 0


def test_enumeration_counts(fdb6):
    assert {i: len(enumerate_trees(fdb6, i)) for i in range(1, 7)} == {
        1: 1,
        2: 2,
        3: 5,
        4: 12,
        5: 33,
        6: 90,
    }


def test_enumeration_degree_three_exactly(fdb6):
    expected = {
        node(3, 1, [leaf(1), leaf(1)]),
        node(3, 1, [node(2, 1, [leaf(1)])]),
        node(3, 1, [leaf(2)]),
        node(3, 2, [leaf(1)]),
        leaf(3),
    }
    got = enumerate_trees(fdb6, 3)
    assert set(got) == expected
    assert [tree_notation(t) for t in got] == [
        "N(3;1)[L(1),L(1)]",
        "N(3;1)[N(2;1)[L(1)]]",
        "N(3;1)[L(2)]",
        "N(3;2)[L(1)]",
        "L(3)",
    ]
    chain = node(3, 1, [node(2, 1, [leaf(1)])])
    assert tree_coefficient(chain, fdb6) == 12  # 4 * 3


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5, 6])
def test_enumeration_is_sound_and_duplicate_free(fdb6, i):
    trees = enumerate_trees(fdb6, i)
    assert len(set(trees)) == len(trees)
    assert leaf(i) in trees
    for t in trees:
        assert t.source == i
        assert tree_coefficient(t, fdb6) != 0
        degrees = [fdb6.degree(j) for j in vertex_monomial(t)]
        assert sum(degrees) == fdb6.degree(i)


def test_enumeration_rejects_unknown_id(fdb6):
    with pytest.raises(InputError):
        enumerate_trees(fdb6, 9)


def test_forest_enumeration_keeps_ordered_multiplicity(fdb6):
    forests = enumerate_forests(fdb6, (2, 2))
    assert len(forests) == 4
    counts = Counter(forest_notation(f) for f in forests)
    assert counts == {
        "L(2)*L(2)": 1,
        "N(2;1)[L(1)]*N(2;1)[L(1)]": 1,
        "N(2;1)[L(1)]*L(2)": 2,
    }
    assert len(enumerate_forests(fdb6, (1, 2, 3))) == 1 * 2 * 5


def planar_encodings(t):
    """Independent oracle for ordered-assignment multiplicity: materialize
    every planar picture of the tree, where each group of equal-source
    siblings is an ordered tuple, and count the distinct results."""
    if t.is_leaf:
        return {("leaf", t.source)}
    by_source = {}
    for c in t.children:
        by_source.setdefault(c.source, []).append(c)
    group_options = []
    for source in sorted(by_source):
        group = by_source[source]
        options = set()
        for perm in set(permutations(group)):
            pools = [sorted(planar_encodings(c)) for c in perm]
            options.update(iter_product(*pools))
        group_options.append(options)
    out = set()
    for pick in iter_product(*group_options):
        out.add(("node", t.source, t.left) + tuple(pick))
    return out


def test_multiplicity_goldens():
    assert tree_multiplicity(leaf(3)) == 1
    assert tree_multiplicity(example_tree()) == 1
    twins = node(5, 1, [node(2, 1, [leaf(1)]), node(2, 1, [leaf(1)])])
    assert tree_multiplicity(twins) == 1
    mixed = node(5, 1, [node(2, 1, [leaf(1)]), leaf(2)])
    assert tree_multiplicity(mixed) == 2
    assert tree_multiplicity(node(6, 1, [mixed])) == 2
    assert tree_multiplicity(forest(mixed, mixed)) == 4


def test_multiplicity_one_below_degree_five(fdb6):
    for i in range(1, 5):
        for t in enumerate_trees(fdb6, i):
            assert tree_multiplicity(t) == 1


@pytest.mark.parametrize("i", [5, 6])
def test_multiplicity_matches_planar_count(fdb6, i):
    for t in enumerate_trees(fdb6, i):
        assert tree_multiplicity(t) == len(planar_encodings(t))


@settings(max_examples=60)
@given(decorated_trees(depth=2))
def test_multiplicity_matches_planar_count_on_random_trees(t):
    assert tree_multiplicity(t) == len(planar_encodings(t))


def test_poset_view_of_tree():
    view = PosetView.of_tree(example_tree())
    assert view.size() == 6
    assert view.roots == ((),)
    assert view.children[()] == ((0,), (1,))
    assert view.is_leaf_vertex((0, 0))
    assert view.less((), (0, 0))
    assert view.less((1,), (1, 1))
    assert not view.less((0,), (1,))
    assert not view.less((), ())
    assert view.source_of[(1,)] == 3 and view.left_of[(1,)] == 1


def test_poset_view_of_forest_and_passthrough():
    f = forest(leaf(1), node(2, 1, [leaf(1)]))
    view = PosetView.of_forest(f)
    assert len(view.roots) == 2
    assert view.size() == 3
    assert view_of(view) is view
    with pytest.raises(InputError):
        view_of("not a tree")


def test_poset_view_of_parent_table():
    view = PosetView.of_parent_table([None, 0, 0, 1])
    assert view.size() == 4
    assert view.roots == ((0,),)
    assert view.children[(0,)] == ((1,), (2,))
    assert view.less((0,), (3,))
    with pytest.raises(InputError):
        PosetView.of_parent_table([None, 2])
    with pytest.raises(InputError):
        PosetView.of_parent_table([None, 0], source=[1])


def test_corolla_cuts_small():
    assert corolla_cuts(leaf(5)) == ()
    two_chain = node(2, 1, [leaf(1)])
    cuts = {forest_notation(c.cut): c for c in corolla_cuts(two_chain)}
    assert set(cuts) == {"L(1)", "N(2;1)[L(1)]"}
    assert cuts["L(1)"].quotient == two_chain
    assert cuts["N(2;1)[L(1)]"].quotient == leaf(2)


def test_corolla_cuts_of_example_tree(fdb6):
    t = example_tree()
    cuts = corolla_cuts(t)
    assert len(cuts) == 14
    assert len({c.vertices for c in cuts}) == 14
    by_height = Counter(height(c.cut) for c in cuts)
    assert by_height == {1: 7, 2: 7}

    view = view_of(t)
    lam = tree_coefficient(t, fdb6)
    for c in cuts:
        # Upward closed, minima recorded, and the counting identities.
        for x in c.vertices:
            for y in view.vertices:
                if view.less(x, y):
                    assert y in c.vertices
        assert c.meet == {
            x for x in c.vertices if view.parent[x] not in c.vertices
        }
        assert vertex_count(t) == (
            vertex_count(c.quotient) + vertex_count(c.cut) - len(c.meet)
        )
        assert lam == tree_coefficient(c.quotient, fdb6) * tree_coefficient(
            c.cut, fdb6
        )

    # The largest cut keeps everything except the root: both terminal
    # corollas come off at once and the quotient contracts each to a leaf.
    full = [c for c in cuts if c.vertices == set(view.vertices) - {()}]
    assert len(full) == 1
    assert full[0].quotient == node(6, 1, [leaf(2), leaf(3)])
    assert full[0].cut == forest(
        node(2, 1, [leaf(1)]), node(3, 1, [leaf(1), leaf(1)])
    )


@settings(max_examples=40)
@given(decorated_trees(depth=2, width=2))
def test_corolla_cut_invariants_hold_generically(t):
    view = view_of(t)
    for c in corolla_cuts(t):
        assert 1 <= height(c.cut) <= 2
        assert vertex_count(t) == (
            vertex_count(c.quotient) + vertex_count(c.cut) - len(c.meet)
        )
        assert c.quotient.source == t.source
        kept = set(c.quotient_view.vertices)
        assert c.meet <= kept <= set(view.vertices)
