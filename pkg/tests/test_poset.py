import itertools

import pytest
from hypothesis import given

from interval_lengths.errors import CycleDetected, DuplicateElement, NotTransitive, UnknownElement
from interval_lengths.patterns import h_poset
from interval_lengths.poset import (
    ANY,
    PatternKind,
    WeightedPoset,
    dual,
    find_pattern,
    find_weighted_embedding,
    from_relations,
    incomparability_set,
    induced,
    is_co_simplicial,
)

from conftest import posets


def chain(names):
    return from_relations(names, list(zip(names, names[1:])))


# -- construction -----------------------------------------------------------


def test_two_plus_two_has_only_its_two_comparabilities(two_plus_two):
    assert two_plus_two.less_than == {("a", "b"), ("x", "y")}


def test_empty_relation_gives_antichain():
    P = from_relations(["u", "v", "w"], [])
    assert P.less_than == frozenset()
    assert all(P.incomparable(x, y) for x, y in itertools.combinations("uvw", 2))


def test_directed_cycle_is_rejected():
    with pytest.raises(CycleDetected):
        from_relations("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_reflexive_pair_is_rejected():
    with pytest.raises(CycleDetected):
        from_relations("ab", [("a", "a")])


def test_duplicate_and_unknown_elements():
    with pytest.raises(DuplicateElement):
        from_relations(["a", "a"], [])
    with pytest.raises(UnknownElement):
        from_relations(["a"], [("a", "z")])


def test_full_mode_demands_closed_input():
    with pytest.raises(NotTransitive):
        from_relations("abc", [("a", "b"), ("b", "c")], mode="full")
    P = from_relations("abc", [("a", "b"), ("b", "c"), ("a", "c")], mode="full")
    assert P == chain("abc")


def test_covers_are_the_hasse_diagram():
    assert chain("abcd").covers() == [("a", "b"), ("b", "c"), ("c", "d")]


# -- incomparability and co-simpliciality ----------------------------------


def test_incomparability_sets_of_three_plus_one(three_plus_one):
    assert incomparability_set(three_plus_one, "x") == {"a", "b", "c"}
    assert incomparability_set(three_plus_one, "b") == {"x"}
    assert incomparability_set(chain("abc"), "b") == set()
    with pytest.raises(UnknownElement):
        incomparability_set(three_plus_one, "q")


def test_co_simplicial_examples(three_plus_one):
    # d is co-simplicial in the first and last H poset only
    assert [is_co_simplicial(h_poset(i), "d") for i in (1, 2, 3, 4)] == [True, False, False, True]
    assert is_co_simplicial(three_plus_one, "b")
    assert not is_co_simplicial(three_plus_one, "x")
    assert all(is_co_simplicial(from_relations("uvw", []), x) for x in "uvw")


# -- pattern search ---------------------------------------------------------


def test_find_two_plus_two(two_plus_two):
    w = find_pattern(two_plus_two, PatternKind.TWO_PLUS_TWO)
    assert w.elements == ("a", "b", "x", "y")
    assert find_pattern(chain("abcd"), PatternKind.TWO_PLUS_TWO) is None


def test_bad_three_plus_one_in_first_h_poset():
    w = find_pattern(h_poset(1), PatternKind.BAD_THREE_PLUS_ONE)
    assert w.labeled() == {"a": "a", "b": "b", "c": "c", "x": "x", "d": "d", "e": "e"}


def test_plain_three_plus_one_has_no_bad_variant(three_plus_one):
    assert find_pattern(three_plus_one, PatternKind.THREE_PLUS_ONE).elements == ("a", "b", "c", "x")
    assert find_pattern(three_plus_one, PatternKind.BAD_THREE_PLUS_ONE) is None


@pytest.mark.parametrize("index", [1, 2, 3, 4])
def test_h_posets_are_interval_orders_with_a_bad_three_plus_one(index):
    H = h_poset(index)
    assert find_pattern(H, PatternKind.TWO_PLUS_TWO) is None
    assert find_pattern(H, PatternKind.BAD_THREE_PLUS_ONE) is not None


def _brute_two_plus_two(P):
    for quad in itertools.permutations(P.elements, 4):
        a, b, x, y = quad
        if P.less(a, b) and P.less(x, y) and all(P.incomparable(u, v) for u in (a, b) for v in (x, y)):
            return True
    return False


def _brute_bad_three_plus_one(P):
    for a, b, c, x in itertools.permutations(P.elements, 4):
        if P.less(a, b) and P.less(b, c) and all(P.incomparable(x, v) for v in (a, b, c)):
            if not is_co_simplicial(P, b):
                return True
    return False


@given(posets())
def test_two_plus_two_search_matches_brute_force(P):
    assert (find_pattern(P, PatternKind.TWO_PLUS_TWO) is not None) == _brute_two_plus_two(P)


@given(posets(max_size=6))
def test_bad_three_plus_one_search_matches_definition(P):
    w = find_pattern(P, PatternKind.BAD_THREE_PLUS_ONE)
    assert (w is not None) == _brute_bad_three_plus_one(P)
    if w is not None:
        a, b, c, x, d, e = w.elements
        assert P.less(a, b) and P.less(b, c) and P.less(d, e)
        assert {d, e} <= incomparability_set(P, b)
        assert all(P.incomparable(x, v) for v in (a, b, c))


@given(posets())
def test_witnesses_satisfy_their_invariants(P):
    w = find_pattern(P, PatternKind.TWO_PLUS_TWO)
    if w is not None:
        a, b, x, y = w.elements
        assert P.less(a, b) and P.less(x, y)
        assert all(P.incomparable(u, v) for u in (a, b) for v in (x, y))


# -- induced, dual ---------------------------------------------------------


def test_induced_examples(two_plus_two):
    assert induced(two_plus_two, {"a", "b"}) == chain("ab")
    assert induced(two_plus_two, two_plus_two.elements) == two_plus_two
    sub = induced(h_poset(1), {"a", "b", "c", "x"})
    assert sub.less_than == {("a", "b"), ("b", "c"), ("a", "c")}
    with pytest.raises(UnknownElement):
        induced(two_plus_two, {"a", "q"})


def test_dual_examples():
    assert dual(chain("ab")).less_than == {("b", "a")}
    A = from_relations("uvw", [])
    assert dual(A) == A


@given(posets())
def test_poset_axioms(P):
    rel = P.less_than
    assert all(x != y for x, y in rel)
    assert all((y, x) not in rel for x, y in rel)
    for x, y in rel:
        for y2, z in rel:
            if y == y2:
                assert (x, z) in rel


@given(posets())
def test_closure_is_idempotent(P):
    assert from_relations(P.elements, P.relation_pairs(), mode="full") == P
    assert from_relations(P.elements, P.covers()) == P


@given(posets())
def test_dual_is_an_involution_and_preserves_co_simpliciality(P):
    assert dual(dual(P)) == P
    D = dual(P)
    assert all(is_co_simplicial(P, x) == is_co_simplicial(D, x) for x in P.elements)


# -- weighted embeddings -------------------------------------------------------


def test_embedding_of_a_pattern_into_itself_is_the_identity(labeled_three_plus_one):
    W = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 2, "b": 1, "x": 2})
    assert find_weighted_embedding(W, W) == {x: x for x in W.elements}


def test_wildcards_match_any_weight(labeled_three_plus_one):
    left = WeightedPoset(labeled_three_plus_one, {"a": ANY, "y": 2, "b": ANY, "x": ANY})
    right = WeightedPoset(labeled_three_plus_one, {"a": ANY, "y": ANY, "b": ANY, "x": 1})
    host = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 2, "b": 2, "x": 2})
    assert find_weighted_embedding(host, left) is not None
    assert find_weighted_embedding(host, right) is None
    safe = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 1, "b": 1, "x": 2})
    assert find_weighted_embedding(safe, left) is None
    assert find_weighted_embedding(safe, right) is None


def test_weights_must_cover_elements(labeled_three_plus_one):
    with pytest.raises(UnknownElement):
        WeightedPoset(labeled_three_plus_one, {"a": 1})
    with pytest.raises(ValueError):
        WeightedPoset(labeled_three_plus_one, {"a": 1, "y": -1, "b": 1, "x": 1})


@given(posets(max_size=6))
def test_every_induced_subposet_embeds(P):
    sub = induced(P, P.elements[::2])
    emb = find_weighted_embedding(WeightedPoset(P, dict.fromkeys(P.elements, 1)), WeightedPoset(sub, dict.fromkeys(sub.elements, 1)))
    assert emb is not None
    for u in sub.elements:
        for v in sub.elements:
            assert sub.less(u, v) == P.less(emb[u], emb[v])
