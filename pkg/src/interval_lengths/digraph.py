"""Constraint digraphs with exact symbolic-epsilon arc weights.

Every arc weight has the form ``m - k*eps`` for integers ``m`` and ``k >= 0``
and an infinitesimal ``eps``.  Weights are compared lexicographically, so
no numeric value of ``eps`` is ever chosen during a decision.  Only
:func:`materialize` picks one, ``eps = 1/(n**2 + 1)``.

Internally the dynamic programs pack ``m - k*eps`` into the single integer
``m*(n**2 + 1) - k``.  All walks they compare have at most ``n`` arcs, so
``k <= n < n**2 + 1`` and the packing is an order isomorphism.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import numpy as np

from .errors import NegativeCyclePresent, check
from .poset import ANY, WeightedPoset


@total_ordering
@dataclass(frozen=True)
class EpsWeight:
    """The value ``m - k*eps`` of the ordered group Z + Z*eps."""

    m: int
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"epsilon count must be non-negative, got {self.k}")

    def __add__(self, other: "EpsWeight") -> "EpsWeight":
        if not isinstance(other, EpsWeight):
            return NotImplemented
        return EpsWeight(self.m + other.m, self.k + other.k)

    def __lt__(self, other: "EpsWeight") -> bool:
        if not isinstance(other, EpsWeight):
            return NotImplemented
        return (self.m, -self.k) < (other.m, -other.k)

    def is_negative(self) -> bool:
        return self.m < 0 or (self.m == 0 and self.k >= 1)

    def __str__(self) -> str:
        if not self.k:
            return str(self.m)
        return f"{self.m}-{self.k}eps"


ZERO = EpsWeight(0, 0)


def epsilon(n: int) -> Fraction:
    """The materialized epsilon for a digraph on ``n`` vertices."""
    return Fraction(1, n * n + 1)


def materialize(w: EpsWeight, n: int) -> Fraction:
    """Exact rational value of ``w`` with ``eps = 1/(n**2 + 1)``."""
    if n < 1:
        raise ValueError("vertex count must be at least 1")
    return w.m - w.k * epsilon(n)


class ArcType(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    kind: ArcType
    weight: EpsWeight


@dataclass(frozen=True)
class ConstraintDigraph:
    """The digraph whose potentials are left endpoints of a representation.

    For ``a > b`` there is a minus arc ``a -> b`` of weight ``-f(b) - eps``;
    for incomparable ``a, b`` there are plus arcs ``a -> b`` of weight
    ``f(a)`` and ``b -> a`` of weight ``f(b)``.
    """

    vertices: tuple
    arcs: tuple

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arc_map(self) -> dict:
        return {(arc.tail, arc.head): arc for arc in self.arcs}

    def packed_matrix(self) -> np.ndarray:
        """Weight matrix with ``m - k*eps`` packed as ``m*(n*n+1) - k``."""
        n = self.n
        scale = n * n + 1
        index = {v: i for i, v in enumerate(self.vertices)}
        W = np.full((n, n), _INF, dtype=np.int64)
        for arc in self.arcs:
            W[index[arc.tail], index[arc.head]] = arc.weight.m * scale - arc.weight.k
        return W


@dataclass(frozen=True)
class QualifyingCycle:
    """A simple cycle of negative weight, listed from its start vertex.

    ``arcs[i]`` runs from ``vertices[i]`` to ``vertices[i + 1]`` (wrapping
    around at the end).
    """

    vertices: tuple
    arcs: tuple
    total: EpsWeight

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def minus_count(self) -> int:
        return sum(arc.kind is ArcType.MINUS for arc in self.arcs)

    def sign_changes(self) -> int:
        kinds = [arc.kind for arc in self.arcs]
        return sum(kinds[i] is not kinds[i - 1] for i in range(len(kinds)))


_INF = np.int64(1) << np.int64(52)


def build_constraint_digraph(W: WeightedPoset) -> ConstraintDigraph:
    """Build the constraint digraph of a weighted poset.

    Arcs are listed by tail index, then head index.
    """
    P = W.poset
    f = W.weight_list()
    for x, w in zip(P.elements, f):
        if w is ANY:
            raise ValueError(f"element {x!r} has a wildcard weight")
    els = P.elements
    arcs = []
    for a in range(P.n):
        down, inc = P.down_mask(a), P.inc_mask(a)
        for b in range(P.n):
            if down >> b & 1:
                arcs.append(Arc(els[a], els[b], ArcType.MINUS, EpsWeight(-f[b], 1)))
            elif inc >> b & 1:
                arcs.append(Arc(els[a], els[b], ArcType.PLUS, EpsWeight(f[a], 0)))
    return ConstraintDigraph(els, tuple(arcs))


def _unpack(value: int, scale: int) -> EpsWeight:
    m = -((-value) // scale)
    return EpsWeight(int(m), int(m * scale - value))


def _min_plus(D: np.ndarray, W: np.ndarray):
    """One min-plus product ``D (x) W`` with argmin, blocked over rows."""
    n = W.shape[0]
    out = np.empty_like(D)
    arg = np.empty(D.shape, dtype=np.int64)
    block = max(1, (1 << 22) // max(1, n * n))
    for lo in range(0, D.shape[0], block):
        hi = min(D.shape[0], lo + block)
        tmp = D[lo:hi, :, None] + W[None, :, :]
        arg[lo:hi] = tmp.argmin(axis=1)
        out[lo:hi] = np.take_along_axis(tmp, arg[lo:hi, None, :], axis=1)[:, 0, :]
    np.minimum(out, _INF, out=out)
    return out, arg


def find_min_arc_qualifying_cycle(G: ConstraintDigraph):
    """Find a negative cycle with the fewest arcs, or ``None``.

    ``D_k[s, v]`` is the least weight of an ``s``-``v`` walk with exactly
    ``k`` arcs.  The first ``k`` for which some diagonal entry is negative
    gives the answer: such a closed walk cannot repeat a vertex, since it
    would then split into two shorter closed walks, one of them negative.
    Ties go to the lowest start vertex, then to the lowest-index
    predecessor at each step.
    """
    n = G.n
    if n < 2:
        return None
    W = G.packed_matrix()
    D = W.copy()
    preds = [None]
    for k in range(1, n + 1):
        if k > 1:
            D, arg = _min_plus(D, W)
            preds.append(arg)
        else:
            preds.append(None)
        diag = np.diagonal(D)
        negative = np.flatnonzero(diag < 0)
        if negative.size:
            return _reconstruct(G, preds, k, int(negative[0]))
    return None


def _reconstruct(G: ConstraintDigraph, preds, k: int, s: int) -> QualifyingCycle:
    # walk s = w0 -> w1 -> ... -> wk = s; preds[j][s, wj] = w(j-1)
    back = []
    v = s
    for j in range(k, 1, -1):
        v = int(preds[j][s, v])
        back.append(v)
    names = [G.vertices[i] for i in [s] + back[::-1]]
    check(len(set(names)) == len(names), f"minimum-arc negative walk is not simple: {names}")
    check(len(names) == k, f"reconstructed {len(names)} vertices for a {k}-arc cycle")
    amap = G.arc_map()
    arcs = []
    for i, u in enumerate(names):
        w = names[(i + 1) % len(names)]
        check((u, w) in amap, f"reconstructed cycle uses a missing arc {u}->{w}")
        arcs.append(amap[(u, w)])
    total = ZERO
    for arc in arcs:
        total = total + arc.weight
    check(total.is_negative(), f"reconstructed cycle has non-negative weight {total}")
    check(total.k >= 1, "negative cycle without a minus arc")
    return QualifyingCycle(tuple(names), tuple(arcs), total)


def compute_potential(G: ConstraintDigraph) -> dict:
    """Least weight of a walk ending at each vertex (the empty walk counts).

    Raises:
        NegativeCyclePresent: relaxation has not settled after ``n`` rounds.
    """
    n = G.n
    if n == 0:
        return {}
    scale = n * n + 1
    W = G.packed_matrix()
    p = np.zeros(n, dtype=np.int64)
    for _ in range(n):
        new = np.minimum(p, (p[:, None] + W).min(axis=0))
        if np.array_equal(new, p):
            break
        p = new
    else:
        raise NegativeCyclePresent("potential relaxation did not settle; the digraph has a negative cycle")
    return {v: _unpack(int(p[i]), scale) for i, v in enumerate(G.vertices)}


def potential_violations(G: ConstraintDigraph, potential: dict) -> list:
    """Arcs ``(x, y, w)`` breaking ``p(y) <= p(x) + w``."""
    return [arc for arc in G.arcs if potential[arc.tail] + arc.weight < potential[arc.head]]
