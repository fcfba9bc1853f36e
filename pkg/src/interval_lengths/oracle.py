"""Ground truth that does not touch the constraint digraph.

* :func:`fm_feasible` decides the raw endpoint inequalities by
  Fourier-Motzkin elimination over exact rationals.
* :func:`enumerate_posets` lists every labeled poset on up to six points.
* :func:`forbidden_scan` searches for induced copies of the forbidden
  patterns directly.
* :func:`random_instance` draws interval orders from random intervals.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .certificates import Certificate01, Certificate12
from .errors import SizeLimit, TooManyVariables
from .patterns import h_poset, patterns_12_up_to
from .poset import Poset, WeightedPoset, find_weighted_embedding, from_relations


class Setting(str, enum.Enum):
    ZERO_ONE = "01"
    ONE_TWO = "12"


# ---------------------------------------------------------------------------
# Linear systems and Fourier-Motzkin elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[v] * L(v)) <relation> bound``."""

    coeffs: dict
    relation: str  # "<" or "<="
    bound: Fraction

    @property
    def strict(self) -> bool:
        return self.relation == "<"

    def holds(self, values: dict) -> bool:
        lhs = sum(c * values[v] for v, c in self.coeffs.items())
        return lhs < self.bound if self.strict else lhs <= self.bound


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple
    constraints: tuple


def build_system(W: WeightedPoset) -> LinearSystem:
    """Endpoint inequalities for a representation with lengths ``f``.

    Variables are left endpoints.  ``b < a`` gives ``L(b) + f(b) < L(a)``;
    incomparable ``a, b`` give ``L(b) - L(a) <= f(a)`` and
    ``L(a) - L(b) <= f(b)``.
    """
    P = W.poset
    els = P.elements
    cons = []
    for b, a in P.relation_pairs():
        cons.append(Constraint({b: 1, a: -1}, "<", Fraction(-W.weight(b))))
    for i, a in enumerate(els):
        for b in els[i + 1 :]:
            if P.incomparable(a, b):
                cons.append(Constraint({b: 1, a: -1}, "<=", Fraction(W.weight(a))))
                cons.append(Constraint({a: 1, b: -1}, "<=", Fraction(W.weight(b))))
    return LinearSystem(tuple(els), tuple(cons))


class Feasibility(NamedTuple):
    feasible: bool
    solution: dict | None


# Internal rows are ``(coeffs, strict, bound)`` with integer coefficients and
# bound, divided through by their common gcd.  The raw system is integral, so
# elimination never needs fractions; only back substitution does.


def _reduce(coeffs: tuple, strict: bool, bound: int):
    g = math.gcd(*coeffs, bound)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        bound //= g
    return coeffs, strict, bound


def _tighten(rows) -> list:
    """Keep the tightest row per coefficient direction."""
    best = {}
    for coeffs, strict, bound in rows:
        g = math.gcd(*coeffs)
        key = tuple(c // g for c in coeffs)
        old = best.get(key)
        if old is None:
            best[key] = (g, coeffs, strict, bound)
            continue
        og, _, ostrict, obound = old
        # compare bound / g against obound / og
        lhs, rhs = bound * og, obound * g
        if lhs < rhs or (lhs == rhs and strict and not ostrict):
            best[key] = (g, coeffs, strict, bound)
    return [(c, s, b) for _, c, s, b in best.values()]


def _as_integral(system: LinearSystem, pos: dict) -> list:
    nv = len(pos)
    rows = []
    for con in system.constraints:
        coeffs = [0] * nv
        for v, c in con.coeffs.items():
            coeffs[pos[v]] += c
        bound = con.bound
        if all(_is_integral(c) for c in coeffs) and _is_integral(bound):
            rows.append(_reduce(tuple(int(c) for c in coeffs), con.strict, int(bound)))
            continue
        coeffs = [Fraction(c) for c in coeffs]
        bound = Fraction(bound)
        scale = math.lcm(bound.denominator, *(c.denominator for c in coeffs))
        rows.append(
            _reduce(tuple(int(c * scale) for c in coeffs), con.strict, int(bound * scale))
        )
    return rows


def _is_integral(q) -> bool:
    return isinstance(q, int) or (isinstance(q, Fraction) and q.denominator == 1)


def fm_feasible(system: LinearSystem, max_variables: int = 12) -> Feasibility:
    """Decide a system of strict and non-strict linear inequalities.

    Variables are eliminated last to first.  A combined row is strict when
    either parent is.  A feasible system also gets a witness, built by back
    substitution in input order.  Each value is the midpoint of its
    feasible range, or a bound shifted by 1 when one side is open, or 0
    when both are.

    Raises:
        TooManyVariables: more than ``max_variables`` variables.
    """
    variables = list(system.variables)
    nv = len(variables)
    if nv > max_variables:
        raise TooManyVariables(f"{nv} variables exceed the limit of {max_variables}")
    rows = _tighten(_as_integral(system, {v: i for i, v in enumerate(variables)}))

    def trivially_ok(strict, bound):
        return bound > 0 if strict else bound >= 0

    stages = []
    for k in range(nv - 1, -1, -1):
        keep, upper, lower = [], [], []
        for row in rows:
            c = row[0][k]
            (upper if c > 0 else lower if c < 0 else keep).append(row)
        stages.append((k, upper + lower))
        for cu, su, bu in upper:
            a = cu[k]
            for cl, sl, bl in lower:
                b = -cl[k]
                coeffs = tuple(b * x + a * y for x, y in zip(cu, cl))
                strict, bound = su or sl, b * bu + a * bl
                if not any(coeffs):
                    if not trivially_ok(strict, bound):
                        return Feasibility(False, None)
                    continue
                keep.append(_reduce(coeffs, strict, bound))
        rows = _tighten(keep)
    for coeffs, strict, bound in rows:
        if not trivially_ok(strict, bound):
            return Feasibility(False, None)

    values = [Fraction(0)] * nv
    for k, stage_rows in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        for coeffs, strict, bound in stage_rows:
            rest = sum(coeffs[j] * values[j] for j in range(k))
            limit = (bound - rest) / coeffs[k]
            if coeffs[k] > 0:
                if hi is None or limit < hi or (limit == hi and strict):
                    hi, hi_strict = limit, strict
            else:
                if lo is None or limit > lo or (limit == lo and strict):
                    lo, lo_strict = limit, strict
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                raise AssertionError("back substitution found an empty range in a feasible system")
            values[k] = (lo + hi) / 2
        elif lo is not None:
            values[k] = lo + 1
        elif hi is not None:
            values[k] = hi - 1
    return Feasibility(True, dict(zip(variables, values)))


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

MAX_ENUMERATION_SIZE = 6


def _closed_subsets(k: int, masks: list) -> list:
    """Subsets S of range(k) with masks[i] contained in S for every i in S."""
    out = []
    for s in range(1 << k):
        ok = True
        m = s
        while m:
            low = m & -m
            if masks[low.bit_length() - 1] & ~s:
                ok = False
                break
            m ^= low
        if ok:
            out.append(s)
    return out


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Yield every labeled poset on elements ``"0"``..``str(n-1)`` once.

    Posets on ``k + 1`` points come from posets on the first ``k`` points by
    choosing a down-closed set ``D`` below the new point and an up-closed
    set ``U`` above it, with every point of ``D`` below every point of
    ``U``.

    Raises:
        SizeLimit: ``n`` is negative or larger than six.
    """
    if n < 0 or n > MAX_ENUMERATION_SIZE:
        raise SizeLimit(f"exhaustive enumeration is limited to 0..{MAX_ENUMERATION_SIZE} points, got {n}")
    names = [str(i) for i in range(n)]

    def extend(up: list) -> Iterator[list]:
        k = len(up)
        if k == n:
            yield up
            return
        down = [0] * k
        for i, m in enumerate(up):
            for j in range(k):
                if m >> j & 1:
                    down[j] |= 1 << i
        down_sets = _closed_subsets(k, down)
        up_sets = _closed_subsets(k, up)
        full = (1 << k) - 1
        for D in down_sets:
            common = full
            m = D
            while m:
                low = m & -m
                common &= up[low.bit_length() - 1]
                m ^= low
            for U in up_sets:
                if U & ~common:
                    continue
                new = [m | (1 << k) if D >> i & 1 else m for i, m in enumerate(up)]
                new.append(U)
                yield from extend(new)

    for up in extend([]):
        yield Poset(names, up)


# ---------------------------------------------------------------------------
# Forbidden pattern scans
# ---------------------------------------------------------------------------


def forbidden_scan(host, setting):
    """Search ``host`` for any induced forbidden pattern of ``setting``.

    For ``"01"`` the four H posets are tried in order.  For ``"12"`` the
    host must be weighted; the two weighted 3+1 patterns come first, then every
    family member with at most ``len(host)`` points by increasing ``t``.

    Returns:
        The first :class:`Certificate01` / :class:`Certificate12` found, or
        ``None``.
    """
    setting = Setting(setting)
    if setting is Setting.ZERO_ONE:
        P = host.poset if isinstance(host, WeightedPoset) else host
        for index in (1, 2, 3, 4):
            emb = find_weighted_embedding(P, h_poset(index))
            if emb is not None:
                return Certificate01(index, {k: emb[k] for k in "abcdex"})
        return None
    if not isinstance(host, WeightedPoset):
        raise TypeError("the {1,2} scan needs a weighted host")
    for kind, t, pattern in patterns_12_up_to(len(host)):
        emb = find_weighted_embedding(host, pattern)
        if emb is not None:
            return Certificate12(kind, t, {p: emb[p] for p in pattern.elements})
    return None


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_intervals(n: int, rng: random.Random) -> list:
    """``n`` random closed intervals with rational endpoints."""
    out = []
    for _ in range(n):
        left = Fraction(rng.randint(0, 3 * n), 2)
        length = Fraction(rng.choice((0, 1, 2, 3, 4, 6, 8, 12)), 2)
        out.append((left, left + length))
    return out


def random_instance(n: int, setting, seed) -> WeightedPoset:
    """A random interval order with random weights legal for ``setting``.

    The order is read off random intervals, so it never contains a 2+2.
    The result depends only on ``(n, setting, seed)``.
    """
    setting = Setting(setting)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"{n}/{setting.value}/{seed}")
    intervals = random_intervals(n, rng)
    names = [f"v{i}" for i in range(n)]
    pairs = [
        (names[i], names[j])
        for i in range(n)
        for j in range(n)
        if intervals[i][1] < intervals[j][0]
    ]
    P = from_relations(names, pairs, mode="full")
    choices = (0, 1) if setting is Setting.ZERO_ONE else (1, 2)
    return WeightedPoset(P, {x: rng.choice(choices) for x in names})
