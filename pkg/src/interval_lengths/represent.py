"""Interval representations with prescribed lengths.

A weighted poset is representable iff its constraint digraph has no
negative cycle.  When it has none, the least walk weights ending at each
vertex are left endpoints of a representation; otherwise the minimum-arc
negative cycle is the evidence that feeds certificate extraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import (
    extract_01_certificate,
    extract_12_certificate,
    verify_certificate,
)
from .digraph import (
    QualifyingCycle,
    build_constraint_digraph,
    compute_potential,
    epsilon,
    find_min_arc_qualifying_cycle,
    materialize,
    potential_violations,
)
from .errors import MissingElement, NotIntervalOrder, WeightOutOfRange, check
from .poset import ANY, PatternKind, Poset, WeightedPoset, find_pattern, is_co_simplicial


@dataclass(frozen=True)
class IntervalRepresentation:
    """Closed rational intervals ``[L, R]`` keyed by element."""

    intervals: dict
    epsilon: Fraction | None = None
    potentials: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "intervals",
            {x: (Fraction(lo), Fraction(hi)) for x, (lo, hi) in self.intervals.items()},
        )

    def __getitem__(self, x):
        return self.intervals[x]

    def __len__(self) -> int:
        return len(self.intervals)

    def shifted(self, delta) -> "IntervalRepresentation":
        delta = Fraction(delta)
        return IntervalRepresentation(
            {x: (lo + delta, hi + delta) for x, (lo, hi) in self.intervals.items()},
            self.epsilon,
            self.potentials,
        )

    def normalized(self) -> "IntervalRepresentation":
        """Shift so that the smallest left endpoint is 0."""
        if not self.intervals:
            return self
        return self.shifted(-min(lo for lo, _ in self.intervals.values()))

    def reflected(self) -> "IntervalRepresentation":
        """Mirror image ``[-R, -L]``; represents the dual poset."""
        return IntervalRepresentation(
            {x: (-hi, -lo) for x, (lo, hi) in self.intervals.items()}, self.epsilon
        )


@dataclass(frozen=True)
class Violation:
    kind: str  # "overlap", "disjoint", "length" or "inverted"
    elements: tuple
    detail: str


def verify_representation(W: WeightedPoset, rep: IntervalRepresentation) -> list:
    """List every way ``rep`` fails to represent ``W``; empty means valid.

    Comparable ``x < y`` needs ``R(x) < L(y)``; incomparable points need
    intersecting intervals; every interval needs length ``f(x)`` (wildcard
    weights skip the length check).

    Raises:
        MissingElement: ``rep`` has no interval for some element.
    """
    P = W.poset
    iv = rep.intervals
    for x in P.elements:
        if x not in iv:
            raise MissingElement(f"no interval for element {x!r}")
    out = []
    for x in P.elements:
        lo, hi = iv[x]
        if lo > hi:
            out.append(Violation("inverted", (x,), f"L({x}) = {lo} > R({x}) = {hi}"))
        f = W.weight(x)
        if f is not ANY and hi - lo != f:
            out.append(Violation("length", (x,), f"|I_{x}| = {hi - lo} but f({x}) = {f}"))
    els = P.elements
    for i, x in enumerate(els):
        for y in els[i + 1 :]:
            (lx, rx), (ly, ry) = iv[x], iv[y]
            if P.less(x, y) or P.less(y, x):
                lo_el, hi_el = (x, y) if P.less(x, y) else (y, x)
                if not iv[lo_el][1] < iv[hi_el][0]:
                    out.append(
                        Violation(
                            "overlap",
                            (lo_el, hi_el),
                            f"{lo_el} < {hi_el} but R({lo_el}) = {iv[lo_el][1]} >= L({hi_el}) = {iv[hi_el][0]}",
                        )
                    )
            elif rx < ly or ry < lx:
                out.append(Violation("disjoint", (x, y), f"{x} and {y} are incomparable but their intervals are disjoint"))
    return out


def canonical_01_weights(P) -> WeightedPoset:
    """Length 0 for co-simplicial points, 1 for all others."""
    if isinstance(P, WeightedPoset):
        P = P.poset
    return WeightedPoset(P, {x: 0 if is_co_simplicial(P, x) else 1 for x in P.elements})


def _require_interval_order(P: Poset) -> None:
    witness = find_pattern(P, PatternKind.TWO_PLUS_TWO)
    if witness is not None:
        raise NotIntervalOrder(witness)


def _check_cycle(C: QualifyingCycle, W: WeightedPoset) -> None:
    check(len(set(C.vertices)) == len(C.vertices), "qualifying cycle is not simple")
    check(C.total.is_negative() and C.minus_count >= 1, "qualifying cycle is not negative")
    # A minimum-arc cycle has unit weight at least 1 - r when all lengths are <= r.
    r = max([1] + W.weight_list())
    check(C.total.m >= 1 - r, f"minimum-arc cycle has unit weight {C.total.m} < {1 - r}")


def represent(W: WeightedPoset):
    """Decide representability with lengths exactly ``f``.

    Returns:
        An :class:`IntervalRepresentation` (left endpoints are the walk
        potentials, so they are all <= 0) or, if none exists, a
        minimum-arc :class:`QualifyingCycle`.

    Raises:
        NotIntervalOrder: the poset contains an induced 2+2.
    """
    P = W.poset
    _require_interval_order(P)
    if any(w is ANY for w in W.weight_list()):
        raise ValueError("represent needs concrete weights")
    n = P.n
    if n == 0:
        return IntervalRepresentation({}, None, {})
    G = build_constraint_digraph(W)
    cycle = find_min_arc_qualifying_cycle(G)
    if cycle is not None:
        _check_cycle(cycle, W)
        return cycle
    p = compute_potential(G)
    check(not potential_violations(G, p), "computed potential violates an arc constraint")
    intervals = {}
    for x in P.elements:
        left = materialize(p[x], n)
        intervals[x] = (left, left + W.weight(x))
    rep = IntervalRepresentation(intervals, epsilon(n), p)
    violations = verify_representation(W, rep)
    check(not violations, f"constructed representation is invalid: {violations}")
    return rep


def represent_01(P):
    """Find a representation with lengths in {0, 1}, or an H certificate.

    Co-simplicial points get length 0 and all others length 1; this is
    without loss of generality, so no other weighting is tried.

    Raises:
        NotIntervalOrder: the poset contains an induced 2+2.
    """
    if isinstance(P, WeightedPoset):
        P = P.poset
    _require_interval_order(P)
    W = canonical_01_weights(P)
    result = represent(W)
    if isinstance(result, IntervalRepresentation):
        return result
    cert = extract_01_certificate(P, cycle=result)
    check(verify_certificate(P, cert), f"emitted certificate does not verify: {cert}")
    return cert


def represent_12(W: WeightedPoset):
    """Find a representation with the prescribed lengths in {1, 2}, or a
    certificate naming an induced member of F.

    Raises:
        WeightOutOfRange: some weight is not 1 or 2.
        NotIntervalOrder: the poset contains an induced 2+2.
    """
    bad = [x for x, w in W.weights.items() if w not in (1, 2) or isinstance(w, bool)]
    if bad:
        raise WeightOutOfRange(f"weights must be 1 or 2; offending elements: {bad}")
    _require_interval_order(W.poset)
    result = represent(W)
    if isinstance(result, IntervalRepresentation):
        return result
    cert = extract_12_certificate(W, result)
    check(verify_certificate(W, cert), f"emitted certificate does not verify: {cert}")
    return cert


