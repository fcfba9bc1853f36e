from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from interval_lengths.digraph import (
    ZERO,
    ArcType,
    EpsWeight,
    build_constraint_digraph,
    compute_potential,
    find_min_arc_qualifying_cycle,
    materialize,
    potential_violations,
)
from interval_lengths.errors import NegativeCyclePresent
from interval_lengths.patterns import family_pattern
from interval_lengths.poset import WeightedPoset, from_relations

from conftest import weighted_interval_orders

eps_weights = st.builds(EpsWeight, st.integers(-20, 20), st.integers(0, 20))


# -- EpsWeight ------------------------------------------------------------------


def test_eps_weight_order_examples():
    assert EpsWeight(0, 1) < ZERO
    assert EpsWeight(-1, 0) < EpsWeight(0, 5)
    assert EpsWeight(0, 2) < EpsWeight(0, 1)
    assert EpsWeight(-1, 1) + EpsWeight(1, 1) == EpsWeight(0, 2)
    with pytest.raises(ValueError):
        EpsWeight(0, -1)


@given(eps_weights, eps_weights, eps_weights)
def test_eps_weight_order_is_total_and_additive(u, v, w):
    assert sum([u < v, v < u, u == v]) == 1
    if u < v and v < w:
        assert u < w
    if u < v:
        assert u + w < v + w
    assert u + ZERO == u


@given(eps_weights)
def test_negative_means_unit_part_below_zero_or_zero_with_eps(w):
    assert w.is_negative() == (w < ZERO)
    assert w.is_negative() == (w.m < 0 or (w.m == 0 and w.k >= 1))


# -- construction ------------------------------------------------------------------


def test_antichain_gets_plus_arcs_both_ways():
    W = WeightedPoset(from_relations("uv", []), {"u": 1, "v": 2})
    G = build_constraint_digraph(W)
    assert [(a.tail, a.head, a.kind, a.weight) for a in G.arcs] == [
        ("u", "v", ArcType.PLUS, EpsWeight(1, 0)),
        ("v", "u", ArcType.PLUS, EpsWeight(2, 0)),
    ]


def test_two_chain_gets_one_minus_arc():
    W = WeightedPoset(from_relations("ab", [("a", "b")]), {"a": 1, "b": 1})
    G = build_constraint_digraph(W)
    assert [(a.tail, a.head, a.kind, a.weight) for a in G.arcs] == [("b", "a", ArcType.MINUS, EpsWeight(-1, 1))]


def test_weighted_three_plus_one_walk(labeled_three_plus_one):
    W = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 2, "b": 1, "x": 2})
    amap = build_constraint_digraph(W).arc_map()
    walk = ["a", "y", "b", "x", "a"]
    total = ZERO
    for u, v in zip(walk, walk[1:]):
        total = total + amap[(u, v)].weight
    assert total == EpsWeight(0, 2)


@given(weighted_interval_orders(lengths=(0, 1, 2, 3)))
def test_arc_count_and_shape(W):
    P = W.poset
    G = build_constraint_digraph(W)
    comparable = len(P.less_than)
    incomparable = sum(P.incomparable(x, y) for i, x in enumerate(P.elements) for y in P.elements[i + 1 :])
    assert len(G.arcs) == comparable + 2 * incomparable
    assert all(a.tail != a.head for a in G.arcs)
    for a in G.arcs:
        if a.kind is ArcType.MINUS:
            assert P.less(a.head, a.tail) and a.weight == EpsWeight(-W.weight(a.head), 1)
        else:
            assert P.incomparable(a.tail, a.head) and a.weight == EpsWeight(W.weight(a.tail), 0)


# -- minimum-arc negative cycles -----------------------------------------------------


def test_cycle_of_weighted_three_plus_one(labeled_three_plus_one):
    W = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 2, "b": 1, "x": 2})
    C = find_min_arc_qualifying_cycle(build_constraint_digraph(W))
    assert C.vertices == ("a", "y", "b", "x")
    assert C.total == EpsWeight(0, 2)
    assert [a.kind for a in C.arcs] == [ArcType.MINUS, ArcType.MINUS, ArcType.PLUS, ArcType.PLUS]


def test_two_chain_has_no_cycle():
    W = WeightedPoset(from_relations("ab", [("a", "b")]), {"a": 1, "b": 1})
    assert find_min_arc_qualifying_cycle(build_constraint_digraph(W)) is None


@pytest.mark.parametrize("fa,fb", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_first_family_t0_cycle_has_zero_unit_part(fa, fb):
    pattern = family_pattern(1, 0)
    weights = dict(pattern.weights, a=fa, b=fb)
    C = find_min_arc_qualifying_cycle(build_constraint_digraph(WeightedPoset(pattern.poset, weights)))
    assert C.total == EpsWeight(0, 3)
    assert len(C) == 5


def _simple_cycles(G):
    """Every simple cycle, each listed once from its smallest vertex."""
    index = {v: i for i, v in enumerate(G.vertices)}
    out = {}
    for a in G.arcs:
        out.setdefault(a.tail, []).append(a)
    cycles = []

    def extend(start, path, arcs):
        for a in out.get(path[-1], []):
            if a.head == start:
                cycles.append(list(arcs) + [a])
            elif index[a.head] > index[start] and a.head not in path:
                extend(start, path + [a.head], arcs + [a])

    for v in G.vertices:
        extend(v, [v], [])
    return cycles


@given(weighted_interval_orders(lengths=(0, 1, 2), max_size=5))
def test_cycle_has_fewest_arcs_by_exhaustion(W):
    G = build_constraint_digraph(W)
    negative = []
    for arcs in _simple_cycles(G):
        total = ZERO
        for a in arcs:
            total = total + a.weight
        if total.is_negative():
            negative.append(len(arcs))
    C = find_min_arc_qualifying_cycle(G)
    if not negative:
        assert C is None
    else:
        assert C is not None and len(C) == min(negative)
        assert C.total.is_negative() and C.minus_count >= 1
        assert len(set(C.vertices)) == len(C.vertices)


# -- potentials ------------------------------------------------------------------------


def test_arcless_digraph_has_zero_potential():
    G = build_constraint_digraph(WeightedPoset(from_relations("u", []), {"u": 3}))
    assert G.arcs == () and compute_potential(G) == {"u": ZERO}
    # zero lengths on an antichain give zero-weight arcs only
    A = build_constraint_digraph(WeightedPoset(from_relations("uvw", []), {"u": 0, "v": 0, "w": 0}))
    assert all(p == ZERO for p in compute_potential(A).values())


def test_zero_length_chain_potential_counts_eps():
    W = WeightedPoset(from_relations("abc", [("a", "b"), ("b", "c")]), {"a": 0, "b": 0, "c": 0})
    p = compute_potential(build_constraint_digraph(W))
    assert p == {"a": EpsWeight(0, 2), "b": EpsWeight(0, 1), "c": ZERO}


def test_two_chain_potential():
    W = WeightedPoset(from_relations("ab", [("a", "b")]), {"a": 1, "b": 1})
    assert compute_potential(build_constraint_digraph(W)) == {"a": EpsWeight(-1, 1), "b": ZERO}


def test_potential_refuses_negative_cycles(labeled_three_plus_one):
    W = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 2, "b": 1, "x": 2})
    with pytest.raises(NegativeCyclePresent):
        compute_potential(build_constraint_digraph(W))


@given(weighted_interval_orders(lengths=(0, 1, 2, 3)))
def test_potential_satisfies_every_arc(W):
    G = build_constraint_digraph(W)
    assume(find_min_arc_qualifying_cycle(G) is None)
    p = compute_potential(G)
    assert potential_violations(G, p) == []
    assert all(not (ZERO < v) for v in p.values())


# -- materialize ---------------------------------------------------------------------


def test_materialize_examples():
    assert materialize(ZERO, 7) == 0
    assert materialize(EpsWeight(-1, 1), 2) == Fraction(-6, 5)
    assert materialize(EpsWeight(0, 2), 4) == Fraction(-2, 17)
    with pytest.raises(ValueError):
        materialize(ZERO, 0)


@given(st.integers(1, 8), st.data())
def test_materialize_preserves_order_for_small_eps_counts(n, data):
    k_max = n * n - 1
    u = EpsWeight(data.draw(st.integers(-5, 5)), data.draw(st.integers(0, k_max)))
    v = EpsWeight(data.draw(st.integers(-5, 5)), data.draw(st.integers(0, k_max)))
    assert (u < v) == (materialize(u, n) < materialize(v, n))
