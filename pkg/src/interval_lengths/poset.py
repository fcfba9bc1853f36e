"""Finite strict partial orders over named elements.

The full transitive relation is stored as one integer bitmask per element
(``up[i]`` has bit ``j`` set iff element ``i`` precedes element ``j``), so
comparability and incomparability queries are O(1) and the pattern searches
below reduce to mask intersections.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CycleDetected, DuplicateElement, NotTransitive, UnknownElement


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite strict partial order.

    Build instances with :func:`from_relations`; the constructor trusts its
    input and is meant for internal use on already-closed relations.
    """

    __slots__ = ("elements", "_index", "_up", "_down", "_inc", "_hash")

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._up = tuple(up)
        n = len(self.elements)
        down = [0] * n
        for i, mask in enumerate(self._up):
            for j in iter_bits(mask):
                down[j] |= 1 << i
        self._down = tuple(down)
        full = (1 << n) - 1
        self._inc = tuple(
            full & ~(self._up[i] | self._down[i] | (1 << i)) for i in range(n)
        )
        self._hash = None

    # -- element access -------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    # -- masks (index based) --------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def inc_mask(self, i: int) -> int:
        return self._inc[i]

    # -- relation queries -----------------------------------------------

    def less(self, x: str, y: str) -> bool:
        """True iff ``x`` precedes ``y``."""
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def comparable(self, x: str, y: str) -> bool:
        return self.less(x, y) or self.less(y, x)

    def incomparable(self, x: str, y: str) -> bool:
        return x != y and not self.comparable(x, y)

    @property
    def less_than(self) -> frozenset:
        """The full relation as a set of ``(x, y)`` pairs with ``x < y``."""
        els = self.elements
        return frozenset(
            (els[i], els[j]) for i, mask in enumerate(self._up) for j in iter_bits(mask)
        )

    def relation_pairs(self) -> list:
        """The full relation as pairs, ordered by element index."""
        els = self.elements
        return [(els[i], els[j]) for i, mask in enumerate(self._up) for j in iter_bits(mask)]

    def covers(self) -> list:
        """Hasse diagram edges ``(x, y)`` where ``y`` covers ``x``."""
        els = self.elements
        out = []
        for i, mask in enumerate(self._up):
            for j in iter_bits(mask):
                if not (mask & self._down[j]):
                    out.append((els[i], els[j]))
        return out

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self._up))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)!r}, covers={self.covers()!r})"


def _closure(up: list) -> list:
    n = len(up)
    for k in range(n):
        bit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= uk
    return up


def from_relations(
    elements: Iterable[str], pairs: Iterable[Sequence[str]] = (), mode: str = "covers"
) -> Poset:
    """Build a poset from generating pairs ``(x, y)`` meaning ``x < y``.

    With ``mode="covers"`` the pairs may be any generating set (usually the
    Hasse diagram) and are transitively closed.  With ``mode="full"`` they
    must already be the complete relation.

    Raises:
        DuplicateElement: an element id occurs twice.
        UnknownElement: a pair names an id not in ``elements``.
        CycleDetected: the closure would force ``x < x``.
        NotTransitive: ``mode="full"`` and the pairs are not closed.
    """
    if mode not in ("covers", "full"):
        raise ValueError(f"mode must be 'covers' or 'full', not {mode!r}")
    elements = list(elements)
    index = {}
    for x in elements:
        if x in index:
            raise DuplicateElement(f"duplicate element {x!r}")
        index[x] = len(index)
    up = [0] * len(elements)
    for pair in pairs:
        x, y = pair
        for z in (x, y):
            if z not in index:
                raise UnknownElement(f"relation ({x!r}, {y!r}) names unknown element {z!r}")
        if x == y:
            raise CycleDetected(f"relation ({x!r}, {x!r}) is reflexive")
        up[index[x]] |= 1 << index[y]
    given = list(up)
    _closure(up)
    for i, mask in enumerate(up):
        if mask >> i & 1:
            raise CycleDetected(f"relations force {elements[i]!r} < {elements[i]!r}")
    if mode == "full" and up != given:
        for i in range(len(up)):
            missing = up[i] & ~given[i]
            if missing:
                j = next(iter_bits(missing))
                raise NotTransitive(
                    f"relation is not transitively closed: missing ({elements[i]!r}, {elements[j]!r})"
                )
    return Poset(elements, up)


def incomparability_set(P: Poset, x: str) -> set:
    """All elements other than ``x`` that are incomparable to ``x``."""
    els = P.elements
    return {els[j] for j in iter_bits(P.inc_mask(P.index(x)))}


def is_antichain_mask(P: Poset, mask: int) -> bool:
    for d in iter_bits(mask):
        if P.up_mask(d) & mask:
            return False
    return True


def is_co_simplicial(P: Poset, x: str) -> bool:
    """True iff the incomparability set of ``x`` is an antichain."""
    return is_antichain_mask(P, P.inc_mask(P.index(x)))


def induced(P: Poset, subset: Iterable[str]) -> Poset:
    """Restriction of ``P`` to ``subset``, keeping ``P``'s element order."""
    wanted = set(subset)
    for x in wanted:
        P.index(x)
    keep = [i for i, x in enumerate(P.elements) if x in wanted]
    pos = {i: k for k, i in enumerate(keep)}
    up = []
    for i in keep:
        mask = 0
        for j in iter_bits(P.up_mask(i)):
            if j in pos:
                mask |= 1 << pos[j]
        up.append(mask)
    return Poset([P.elements[i] for i in keep], up)


def dual(P: Poset) -> Poset:
    """The poset with every comparability reversed."""
    return Poset(P.elements, [P.down_mask(i) for i in range(P.n)])


# ---------------------------------------------------------------------------
# Induced pattern search
# ---------------------------------------------------------------------------


class PatternKind(enum.Enum):
    TWO_PLUS_TWO = "TwoPlusTwo"
    THREE_PLUS_ONE = "ThreePlusOne"
    BAD_THREE_PLUS_ONE = "BadThreePlusOne"


_LABELS = {
    PatternKind.TWO_PLUS_TWO: ("a", "b", "x", "y"),
    PatternKind.THREE_PLUS_ONE: ("a", "b", "c", "x"),
    PatternKind.BAD_THREE_PLUS_ONE: ("a", "b", "c", "x", "d", "e"),
}


@dataclass(frozen=True)
class PatternWitness:
    """An induced 2+2, 3+1, or 3+1 with a non-co-simplicial middle.

    ``elements`` is ``(a, b, x, y)`` for a 2+2 with ``a < b`` and ``x < y``;
    ``(a, b, c, x)`` for a 3+1 with chain ``a < b < c``; and
    ``(a, b, c, x, d, e)`` for the bad variant, where ``d < e`` both lie in
    the incomparability set of ``b``.
    """

    kind: PatternKind
    elements: tuple

    def labeled(self) -> dict:
        return dict(zip(_LABELS[self.kind], self.elements))


def _two_plus_two(P: Poset):
    up, inc = P._up, P._inc
    for a in range(P.n):
        for b in iter_bits(up[a]):
            both = inc[a] & inc[b]
            for x in iter_bits(both):
                ys = up[x] & both
                if ys:
                    return (a, b, x, next(iter_bits(ys)))
    return None


def _three_plus_one(P: Poset, bad: bool):
    up, inc = P._up, P._inc
    for a in range(P.n):
        for b in iter_bits(up[a]):
            if bad:
                inc_b = inc[b]
                de = None
                for d in iter_bits(inc_b):
                    es = up[d] & inc_b
                    if es:
                        de = (d, next(iter_bits(es)))
                        break
                if de is None:
                    continue
            ab = inc[a] & inc[b]
            for c in iter_bits(up[b]):
                xs = ab & inc[c]
                if xs:
                    found = (a, b, c, next(iter_bits(xs)))
                    return found + de if bad else found
    return None


def find_pattern(P: Poset, kind: PatternKind):
    """Return the lexicographically first induced occurrence of ``kind``.

    Witness tuples are compared by element index, so the result depends only
    on the input element order.  Returns ``None`` when there is none.
    """
    kind = PatternKind(kind)
    if kind is PatternKind.TWO_PLUS_TWO:
        found = _two_plus_two(P)
    else:
        found = _three_plus_one(P, kind is PatternKind.BAD_THREE_PLUS_ONE)
    if found is None:
        return None
    return PatternWitness(kind, tuple(P.elements[i] for i in found))


# ---------------------------------------------------------------------------
# Weighted posets and weighted embeddings
# ---------------------------------------------------------------------------


class Wildcard(enum.Enum):
    ANY = "any"

    def __repr__(self) -> str:
        return "ANY"


#: Pattern weight that matches every host weight.
ANY = Wildcard.ANY


@dataclass(frozen=True)
class WeightedPoset:
    """A poset with a prescribed interval length per element.

    Weights are non-negative integers.  Patterns used for certificate
    matching may also carry :data:`ANY`.
    """

    poset: Poset
    weights: Mapping

    def __post_init__(self):
        weights = dict(self.weights)
        if set(weights) != set(self.poset.elements):
            missing = [x for x in self.poset.elements if x not in weights]
            extra = [x for x in weights if x not in self.poset]
            raise UnknownElement(f"weights do not match elements (missing {missing}, extra {extra})")
        for x, w in weights.items():
            if w is ANY:
                continue
            if isinstance(w, bool) or not isinstance(w, int) or w < 0:
                raise ValueError(f"weight of {x!r} must be a non-negative integer, got {w!r}")
        ordered = {x: weights[x] for x in self.poset.elements}
        object.__setattr__(self, "weights", ordered)

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    def __len__(self) -> int:
        return len(self.poset)

    def weight(self, x: str):
        return self.weights[x]

    def weight_list(self) -> list:
        return [self.weights[x] for x in self.poset.elements]

    def induced(self, subset: Iterable[str]) -> "WeightedPoset":
        Q = induced(self.poset, subset)
        return WeightedPoset(Q, {x: self.weights[x] for x in Q.elements})

    def dual(self) -> "WeightedPoset":
        return WeightedPoset(dual(self.poset), self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedPoset):
            return NotImplemented
        return self.poset == other.poset and self.weights == other.weights

    __hash__ = None


def as_weighted(P) -> WeightedPoset:
    """View a plain poset as a pattern whose weights are all wildcards."""
    if isinstance(P, WeightedPoset):
        return P
    return WeightedPoset(P, {x: ANY for x in P.elements})


def _search_order(P: Poset) -> list:
    # Greedy order: each next point has the most comparabilities with the
    # points already placed, so candidate masks shrink quickly.
    n = P.n
    if n == 0:
        return []
    comp = [P.up_mask(i) | P.down_mask(i) for i in range(n)]
    degree = [bin(m).count("1") for m in comp]
    order = [max(range(n), key=lambda i: (degree[i], -i))]
    placed = 1 << order[0]
    while len(order) < n:
        best = max(
            (i for i in range(n) if not placed >> i & 1),
            key=lambda i: (bin(comp[i] & placed).count("1"), degree[i], -i),
        )
        order.append(best)
        placed |= 1 << best
    return order


def find_weighted_embedding(host, pattern, within: Iterable[str] | None = None):
    """Find an induced, weight-preserving copy of ``pattern`` inside ``host``.

    Both arguments may be a :class:`Poset` (all weights wildcard) or a
    :class:`WeightedPoset`.  A pattern weight of :data:`ANY` matches every
    host weight; any other pattern weight must equal the host weight.  If
    ``within`` is given, only those host elements are used.

    Returns:
        A dict from pattern element to host element, or ``None``.
    """
    host = as_weighted(host)
    pattern = as_weighted(pattern)
    if within is not None:
        host = host.induced(within)
    H, Q = host.poset, pattern.poset
    if Q.n > H.n:
        return None
    hw, qw = host.weight_list(), pattern.weight_list()
    h_up_deg = [bin(H.up_mask(i)).count("1") for i in range(H.n)]
    h_down_deg = [bin(H.down_mask(i)).count("1") for i in range(H.n)]

    order = _search_order(Q)
    allowed = []
    for p in order:
        up_deg = bin(Q.up_mask(p)).count("1")
        down_deg = bin(Q.down_mask(p)).count("1")
        mask = 0
        for v in range(H.n):
            if qw[p] is not ANY and hw[v] != qw[p]:
                continue
            if h_up_deg[v] < up_deg or h_down_deg[v] < down_deg:
                continue
            mask |= 1 << v
        if not mask:
            return None
        allowed.append(mask)

    # For each position k, the relation of order[k] to every earlier position.
    constraints = []
    for k, p in enumerate(order):
        rows = []
        for j in range(k):
            q = order[j]
            if Q.up_mask(p) >> q & 1:
                rows.append((j, "down"))  # p < q: image of p lies below image of q
            elif Q.down_mask(p) >> q & 1:
                rows.append((j, "up"))
            else:
                rows.append((j, "inc"))
        constraints.append(rows)

    masks = {"up": H.up_mask, "down": H.down_mask, "inc": H.inc_mask}
    image = [0] * len(order)

    def extend(k: int, used: int) -> bool:
        if k == len(order):
            return True
        cand = allowed[k] & ~used
        for j, rel in constraints[k]:
            cand &= masks[rel](image[j])
            if not cand:
                return False
        for v in iter_bits(cand):
            image[k] = v
            if extend(k + 1, used | (1 << v)):
                return True
        return False

    if not extend(0, 0):
        return None
    return {Q.elements[p]: H.elements[image[k]] for k, p in enumerate(order)}
