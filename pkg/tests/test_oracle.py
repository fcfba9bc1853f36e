import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interval_lengths.certificates import Certificate01, Certificate12, verify_certificate
from interval_lengths.errors import SizeLimit, TooManyVariables
from interval_lengths.oracle import (
    Constraint,
    LinearSystem,
    Setting,
    build_system,
    enumerate_posets,
    fm_feasible,
    forbidden_scan,
    random_instance,
)
from interval_lengths.patterns import Kind12, family_pattern, h_poset
from interval_lengths.poset import PatternKind, WeightedPoset, find_pattern, from_relations
from interval_lengths.represent import IntervalRepresentation, verify_representation

from conftest import weighted_interval_orders


def _as_tuples(system):
    return {(tuple(sorted(c.coeffs.items())), c.relation, c.bound) for c in system.constraints}


def _intervals(W, solution):
    return IntervalRepresentation({x: (solution[x], solution[x] + W.weight(x)) for x in W.elements})


# -- build_system ------------------------------------------------------------------


def test_two_chain_system():
    W = WeightedPoset(from_relations("ab", [("a", "b")]), {"a": 1, "b": 1})
    assert _as_tuples(build_system(W)) == {((("a", 1), ("b", -1)), "<", Fraction(-1))}


def test_antichain_system():
    W = WeightedPoset(from_relations("uv", []), {"u": 1, "v": 2})
    assert _as_tuples(build_system(W)) == {
        ((("u", -1), ("v", 1)), "<=", Fraction(1)),
        ((("u", 1), ("v", -1)), "<=", Fraction(2)),
    }


@given(weighted_interval_orders(lengths=(0, 1, 2, 3)))
def test_system_has_difference_constraints(W):
    system = build_system(W)
    P = W.poset
    assert sum(c.strict for c in system.constraints) == len(P.less_than)
    for c in system.constraints:
        assert sorted(c.coeffs.values()) == [-1, 1]


# -- Fourier-Motzkin ------------------------------------------------------------------


@pytest.mark.parametrize("weights", list(itertools.product((0, 1, 2, 5), repeat=4)))
def test_two_plus_two_is_infeasible_for_any_weights(two_plus_two, weights):
    W = WeightedPoset(two_plus_two, dict(zip("abxy", weights)))
    assert fm_feasible(build_system(W)) == (False, None)


def test_empty_system_is_feasible():
    assert fm_feasible(LinearSystem((), ())) == (True, {})


def test_three_plus_one_witness_checks_by_substitution(labeled_three_plus_one):
    W = WeightedPoset(labeled_three_plus_one, {"a": 1, "y": 1, "b": 1, "x": 2})
    system = build_system(W)
    feasible, solution = fm_feasible(system)
    assert feasible
    assert all(c.holds(solution) for c in system.constraints)
    # b < y < a as intervals, and x meets all three
    assert solution["b"] + 1 < solution["y"] and solution["y"] + 1 < solution["a"]
    assert verify_representation(W, _intervals(W, solution)) == []


def test_strictness_is_respected():
    # x - y < 0 and y - x <= 0 are jointly satisfiable; adding y - x < 0 is not
    ok = LinearSystem(("x", "y"), (Constraint({"x": 1, "y": -1}, "<", Fraction(0)), Constraint({"y": 1, "x": -1}, "<=", Fraction(5))))
    assert fm_feasible(ok).feasible
    bad = LinearSystem(("x", "y"), (Constraint({"x": 1, "y": -1}, "<", Fraction(0)), Constraint({"y": 1, "x": -1}, "<=", Fraction(0))))
    assert fm_feasible(bad) == (False, None)
    tight = LinearSystem(("x", "y"), (Constraint({"x": 1, "y": -1}, "<=", Fraction(0)), Constraint({"y": 1, "x": -1}, "<=", Fraction(0))))
    feasible, sol = fm_feasible(tight)
    assert feasible and sol["x"] == sol["y"]


def test_variable_limit():
    variables = tuple(f"v{i}" for i in range(13))
    with pytest.raises(TooManyVariables):
        fm_feasible(LinearSystem(variables, ()))
    assert fm_feasible(LinearSystem(variables, ()), max_variables=13).feasible


@given(weighted_interval_orders(lengths=(0, 1, 2), max_size=6))
def test_witness_substitution(W):
    system = build_system(W)
    feasible, solution = fm_feasible(system)
    if feasible:
        assert all(c.holds(solution) for c in system.constraints)
        assert verify_representation(W, _intervals(W, solution)) == []
    else:
        assert solution is None


# -- enumeration ----------------------------------------------------------------------


def _count_by_brute_force(n):
    """Strict orders on n points, by testing every subset of ordered pairs."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            count += 1
    return count


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)])
def test_counts_match_brute_force(n, expected):
    posets = list(enumerate_posets(n))
    assert len(posets) == expected == _count_by_brute_force(n)
    assert len({P.less_than for P in posets}) == expected


def test_five_point_count_and_determinism():
    first = [P.less_than for P in enumerate_posets(5)]
    assert len(first) == 4231 == len(set(first))
    assert first == [P.less_than for P in enumerate_posets(5)]


def test_size_limit():
    with pytest.raises(SizeLimit):
        list(enumerate_posets(7))
    with pytest.raises(SizeLimit):
        list(enumerate_posets(-1))


# -- forbidden_scan ---------------------------------------------------------------------


@pytest.mark.parametrize("index", [1, 2, 3, 4])
def test_scan_finds_each_h_poset_as_itself(index):
    cert = forbidden_scan(h_poset(index), Setting.ZERO_ONE)
    assert cert == Certificate01(index, {v: v for v in "abcdex"})


def test_scan_finds_second_family_member():
    pattern = family_pattern(2, 1)
    W = WeightedPoset(pattern.poset, dict(pattern.weights, a=2, b=1))
    cert = forbidden_scan(W, "12")
    assert isinstance(cert, Certificate12) and (cert.kind, cert.t) == (Kind12.F2, 1)
    assert verify_certificate(W, cert)


@pytest.mark.parametrize("n", range(1, 7))
def test_scan_finds_nothing_in_a_chain(n):
    names = [f"c{i}" for i in range(n)]
    chain = from_relations(names, list(zip(names, names[1:])))
    assert forbidden_scan(chain, "01") is None
    for weights in itertools.product((1, 2), repeat=min(n, 4)):
        W = WeightedPoset(chain, dict(zip(names, weights + (1,) * (n - len(weights)))))
        assert forbidden_scan(W, "12") is None


def test_scan_of_unweighted_host_in_one_two_setting_is_an_error():
    with pytest.raises(TypeError):
        forbidden_scan(h_poset(1), "12")


# -- random instances --------------------------------------------------------------------


def test_single_point_instance():
    W = random_instance(1, "12", 3)
    assert W.elements == ("v0",) and W.weight("v0") in (1, 2)


def test_random_instance_is_deterministic():
    a, b = random_instance(6, Setting.ZERO_ONE, 7), random_instance(6, "01", 7)
    assert a.poset.less_than == b.poset.less_than and a.weights == b.weights


@settings(max_examples=60)
@given(st.integers(1, 14), st.sampled_from(["01", "12"]), st.integers(0, 10**6))
def test_random_instances_are_legal_interval_orders(n, setting, seed):
    W = random_instance(n, setting, seed)
    assert len(W) == n
    assert find_pattern(W.poset, PatternKind.TWO_PLUS_TWO) is None
    assert set(W.weight_list()) <= ({0, 1} if setting == "01" else {1, 2})
