"""The forbidden (weighted) posets.

* ``H1``..``H4``: six-point posets that obstruct {0,1}-representations.
  All four contain the chain ``a < b < c``, ``d < e``, ``d < c``,
  ``a < e`` and an isolated ``x``; they differ in whether ``a < d`` and
  whether ``e < c``.
* ``Fig3Left`` / ``Fig3Right``: the 3+1 ``b < y < a`` with ``x``
  incomparable, weighted ``f(y) = 2`` or ``f(x) = 1``.
* ``F1``..``F4`` with parameter ``t >= 0``: generated from their defining
  comparabilities and transitive closure.  In ``F2`` and ``F4`` the top of
  the ``y`` chain, ``y_{t+1}``, is the point ``a`` itself.

The index ranges of the family comparabilities are taken to be every index
for which both endpoints exist.  Hand-written ``t = 6`` Hasse diagrams of all
four families agree with this reading (see ``tests/test_patterns.py``).
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .poset import ANY, Poset, WeightedPoset, from_relations

H_ELEMENTS = ("a", "b", "c", "d", "e", "x")
_H_BASE = [("a", "b"), ("b", "c"), ("d", "e"), ("d", "c"), ("a", "e")]

# family index -> (a < d, e < c)
H_SHAPES = {1: (True, True), 2: (False, False), 3: (False, True), 4: (True, False)}


def h_index(a_below_d: bool, e_below_c: bool) -> int:
    for index, shape in H_SHAPES.items():
        if shape == (a_below_d, e_below_c):
            return index
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def h_poset(index: int) -> Poset:
    """The ``index``-th {0,1}-obstruction, ``index`` in 1..4."""
    if index not in H_SHAPES:
        raise ValueError(f"H index must be 1..4, got {index}")
    a_below_d, e_below_c = H_SHAPES[index]
    pairs = list(_H_BASE)
    if a_below_d:
        pairs.append(("a", "d"))
    if e_below_c:
        pairs.append(("e", "c"))
    return from_relations(H_ELEMENTS, pairs)


class Kind12(str, enum.Enum):
    FIG3_LEFT = "Fig3Left"
    FIG3_RIGHT = "Fig3Right"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"

    @property
    def family(self):
        return int(self.value[1]) if self.value.startswith("F") and len(self.value) == 2 else None


FIG3_ELEMENTS = ("a", "y", "b", "x")


@lru_cache(maxsize=None)
def fig3_pattern(kind: Kind12) -> WeightedPoset:
    kind = Kind12(kind)
    P = from_relations(FIG3_ELEMENTS, [("b", "y"), ("y", "a")])
    weights = dict.fromkeys(FIG3_ELEMENTS, ANY)
    if kind is Kind12.FIG3_LEFT:
        weights["y"] = 2
    elif kind is Kind12.FIG3_RIGHT:
        weights["x"] = 1
    else:
        raise ValueError(f"{kind} is not a weighted 3+1 pattern")
    return WeightedPoset(P, weights)


def family_size(family: int, t: int) -> int:
    return {1: 2 * t + 5, 2: 2 * t + 4, 3: 2 * t + 6, 4: 2 * t + 5}[family]


def y_name(family: int, t: int, i: int) -> str:
    if family in (2, 4) and i == t + 1:
        return "a"
    return f"y{i}"


@lru_cache(maxsize=None)
def family_pattern(family: int, t: int) -> WeightedPoset:
    """The member of family ``F<family>`` with parameter ``t``.

    Points are ``a``, ``b``, ``y0..y{t+1}`` and ``x1..x{t+1}`` (plus ``x0``
    in families 3 and 4); in families 2 and 4 ``y{t+1}`` is named ``a``.
    ``a`` and ``b`` carry wildcard weights.
    """
    if family not in (1, 2, 3, 4):
        raise ValueError(f"family must be 1..4, got {family}")
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    y = lambda i: y_name(family, t, i)  # noqa: E731
    x_range = range(0 if family in (3, 4) else 1, t + 2)
    y_range = range(0, t + 2)

    elements = ["a", "b"] + [y(i) for i in y_range if y(i) != "a"] + [f"x{i}" for i in x_range]
    pairs = [("b", y(0))]
    pairs += [(y(i), y(i + 1)) for i in range(0, t + 1)]
    for i in x_range:
        if i + 2 in x_range:
            pairs.append((f"x{i}", f"x{i + 2}"))
        if i + 1 in y_range:
            pairs.append((f"x{i}", y(i + 1)))
    for i in y_range:
        if i + 2 in x_range:
            pairs.append((y(i), f"x{i + 2}"))
    if family in (1, 3):
        pairs.append((y(t + 1), "a"))
    if family in (3, 4):
        pairs.append(("b", "x1"))

    weights = dict.fromkeys(elements, 2)
    weights["a"] = weights["b"] = ANY
    ones = {
        1: [y(0), y(t + 1)],
        2: [y(0), f"x{t + 1}"],
        3: ["x0", y(t + 1)],
        4: ["x0", f"x{t + 1}"],
    }[family]
    for v in ones:
        weights[v] = 1
    return WeightedPoset(from_relations(elements, pairs), weights)


def pattern_12(kind: Kind12, t: int | None = None) -> WeightedPoset:
    kind = Kind12(kind)
    if kind.family is None:
        return fig3_pattern(kind)
    if t is None:
        raise ValueError(f"{kind.value} needs a parameter t")
    return family_pattern(kind.family, t)


def patterns_12_up_to(size: int):
    """Yield ``(kind, t, pattern)`` for every member of F with at most
    ``size`` points: the two weighted 3+1 patterns first, then families by
    increasing ``t``."""
    for kind in (Kind12.FIG3_LEFT, Kind12.FIG3_RIGHT):
        if size >= 4:
            yield kind, None, fig3_pattern(kind)
    t = 0
    while min(family_size(f, t) for f in (1, 2, 3, 4)) <= size:
        for family in (1, 2, 3, 4):
            if family_size(family, t) <= size:
                yield Kind12(f"F{family}"), t, family_pattern(family, t)
        t += 1
