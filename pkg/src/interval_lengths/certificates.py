"""Forbidden-subposet certificates: extraction and independent verification.

Extraction turns failure evidence into a named pattern plus an embedding:

* {0,1}: a 3+1 whose middle point is not co-simplicial always completes
  to one of ``H1``..``H4`` on six points.
* {1,2}: a minimum-arc negative cycle is either a 4-arc weighted 3+1 or,
  read in the order of its unique minus run followed by its unique plus
  run, matches one of four arc-weight templates.  Each template spells out
  a member of ``F1``..``F4`` on the cycle's vertices.

Verification re-derives everything from the host poset and the pattern
definitions and shares nothing with the extraction path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import ArcType, ConstraintDigraph, EpsWeight, QualifyingCycle
from .errors import NoBadPattern, UnclassifiableCycle, check
from .patterns import Kind12, h_index, h_poset, pattern_12, y_name
from .poset import (
    ANY,
    PatternKind,
    PatternWitness,
    Poset,
    WeightedPoset,
    find_pattern,
    find_weighted_embedding,
)


@dataclass(frozen=True)
class Certificate01:
    """An induced copy of ``H<family_index>``.

    ``embedding`` maps the pattern points ``a, b, c, d, e, x`` to host
    elements.
    """

    family_index: int
    embedding: dict
    cycle: QualifyingCycle | None = field(default=None, compare=False)

    setting = "01"

    @property
    def kind(self) -> str:
        return f"H{self.family_index}"

    @property
    def t(self):
        return None


@dataclass(frozen=True)
class Certificate12:
    """An induced copy of a weighted pattern from F.

    ``t`` is ``None`` for the two weighted 3+1 patterns.
    """

    kind: Kind12
    t: int | None
    embedding: dict
    cycle: QualifyingCycle | None = field(default=None, compare=False)

    setting = "12"

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind12(self.kind))


@dataclass(frozen=True)
class CycleClass:
    family: int
    t: int
    labels: dict


# ---------------------------------------------------------------------------
# {0,1}
# ---------------------------------------------------------------------------


def extract_01_certificate(P, cycle: QualifyingCycle | None = None) -> Certificate01:
    """Complete the first bad 3+1 of ``P`` to one of the four H posets.

    Raises:
        NoBadPattern: every induced 3+1 has a co-simplicial middle.
    """
    if isinstance(P, WeightedPoset):
        P = P.poset
    witness = find_pattern(P, PatternKind.BAD_THREE_PLUS_ONE)
    if witness is None:
        raise NoBadPattern("every induced 3+1 has a co-simplicial middle point")
    a, b, c, x, d, e = witness.elements
    less = P.less
    check(x not in (d, e), f"x coincides with d or e; {b}<{c} and {d}<{e} would form a 2+2")
    check(less(d, c), f"{d} < {c} is forced, otherwise {d}<{e} and {b}<{c} form a 2+2")
    check(less(a, e), f"{a} < {e} is forced, otherwise {a}<{b} and {d}<{e} form a 2+2")
    check(P.incomparable(d, x), f"{d} and {x} must be incomparable")
    check(P.incomparable(e, x), f"{e} and {x} must be incomparable")
    index = h_index(less(a, d), less(e, c))
    embedding = dict(zip("abcxde", (a, b, c, x, d, e)))
    embedding = {k: embedding[k] for k in "abcdex"}
    return Certificate01(index, embedding, cycle)


# ---------------------------------------------------------------------------
# {1,2}
# ---------------------------------------------------------------------------


def _minus_then_plus(C: QualifyingCycle):
    """Rotate ``C`` to start where its minus run starts.

    Returns the rotated vertex and arc lists.
    """
    kinds = [arc.kind for arc in C.arcs]
    if C.sign_changes() != 2:
        raise UnclassifiableCycle(
            f"cycle {list(C.vertices)} has {C.sign_changes()} sign changes, expected 2"
        )
    start = next(
        i for i in range(len(kinds)) if kinds[i] is ArcType.MINUS and kinds[i - 1] is ArcType.PLUS
    )
    verts = list(C.vertices[start:] + C.vertices[:start])
    arcs = list(C.arcs[start:] + C.arcs[:start])
    return verts, arcs


def classify_cycle(C: QualifyingCycle, G: ConstraintDigraph | None = None) -> CycleClass:
    """Match a minimum-arc cycle of a {1,2} instance against the four
    cycle templates and label its vertices.

    After rotation the cycle reads ``a -> ... -> b`` along minus arcs, then
    ``b -> ... -> a`` along plus arcs.  The run lengths fix ``t`` for each
    family and the unit arc weights must equal that family's template.
    The four templates never match the same cycle.

    Raises:
        UnclassifiableCycle: no template fits exactly.
    """
    if G is not None:
        amap = G.arc_map()
        for arc in C.arcs:
            if amap.get((arc.tail, arc.head)) != arc:
                raise UnclassifiableCycle(f"arc {arc.tail}->{arc.head} is not in the digraph")
    verts, arcs = _minus_then_plus(C)
    M = sum(arc.kind is ArcType.MINUS for arc in arcs)
    Pn = len(arcs) - M
    if Pn < 2 or M < 2:
        raise UnclassifiableCycle(f"runs too short: {M} minus arcs, {Pn} plus arcs")
    minus_path = verts[: M + 1]
    plus_path = verts[M:] + [verts[0]]
    units = [arc.weight.m for arc in arcs]
    minus_w, plus_w = units[:M], units[M:]
    fb = plus_w[0]

    for family in (1, 2, 3, 4):
        t = Pn - 2 if family in (1, 2) else Pn - 3
        if t < 0 or fb not in (1, 2):
            continue
        if minus_w == _minus_template(family, t, fb) and plus_w == _plus_template(family, t, fb):
            break
    else:
        raise UnclassifiableCycle(f"no template for minus run {minus_w} and plus run {plus_w}")

    # y_j sits j+1 steps before b on the minus path; in families 2 and 4
    # y_{t+1} is a itself.
    labels = {"a": minus_path[0], "b": minus_path[-1]}
    for j in range(t + 2):
        name = y_name(family, t, j)
        if name != "a":
            labels[name] = minus_path[M - 1 - j]
    first_x = 1 if family in (1, 2) else 0
    for pos, i in enumerate(range(first_x, t + 2), start=1):
        labels[f"x{i}"] = plus_path[pos]
    check(len(set(labels.values())) == len(labels) == len(arcs), "cycle labels are not a bijection")
    return CycleClass(family, t, labels)


def _minus_template(family: int, t: int, fb: int) -> list:
    return {
        1: [-1] + [-2] * t + [-1, -fb],
        2: [-2] * t + [-1, -fb],
        3: [-1] + [-2] * (t + 1) + [-fb],
        4: [-2] * (t + 1) + [-fb],
    }[family]


def _plus_template(family: int, t: int, fb: int) -> list:
    return {
        1: [fb] + [2] * t + [2],
        2: [fb] + [2] * t + [1],
        3: [fb, 1] + [2] * t + [2],
        4: [fb, 1] + [2] * t + [1],
    }[family]


def extract_12_certificate(W: WeightedPoset, C: QualifyingCycle, G: ConstraintDigraph | None = None) -> Certificate12:
    """Read the forbidden weighted poset off a minimum-arc negative cycle."""
    if len(C) == 4:
        verts, arcs = _minus_then_plus(C)
        kinds = [arc.kind for arc in arcs]
        if kinds != [ArcType.MINUS, ArcType.MINUS, ArcType.PLUS, ArcType.PLUS]:
            raise UnclassifiableCycle(f"4-arc cycle {verts} is not of shape (-,-,+,+)")
        a, y, b, x = verts
        embedding = {"a": a, "y": y, "b": b, "x": x}
        if W.weight(y) == 2:
            return Certificate12(Kind12.FIG3_LEFT, None, embedding, C)
        if W.weight(x) == 1:
            return Certificate12(Kind12.FIG3_RIGHT, None, embedding, C)
        raise UnclassifiableCycle(f"4-arc cycle {verts} has f(y)=1 and f(x)=2")
    cls = classify_cycle(C, G)
    return Certificate12(Kind12(f"F{cls.family}"), cls.t, cls.labels, C)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _same_relations(host: Poset, pattern: Poset, embedding: dict) -> bool:
    names = pattern.elements
    for p in names:
        for q in names:
            if p != q and pattern.less(p, q) != host.less(embedding[p], embedding[q]):
                return False
    return True


def _embedding_ok(host: Poset, pattern: Poset, embedding) -> bool:
    if not isinstance(embedding, dict) or set(embedding) != set(pattern.elements):
        return False
    images = list(embedding.values())
    if len(set(images)) != len(images) or any(v not in host for v in images):
        return False
    return True


def _verify_01(host, cert: Certificate01) -> bool:
    P = host.poset if isinstance(host, WeightedPoset) else host
    try:
        pattern = h_poset(cert.family_index)
    except ValueError:
        return False
    emb = cert.embedding
    if not _embedding_ok(P, pattern, emb) or not _same_relations(P, pattern, emb):
        return False
    a, b, c, d, e, x = (emb[k] for k in "abcdex")
    less = P.less
    if not (less(a, b) and less(b, c) and less(d, e)):
        return False
    if not all(P.incomparable(x, v) for v in (a, b, c)):
        return False
    if not (P.incomparable(b, d) and P.incomparable(b, e)):
        return False
    return find_weighted_embedding(P, pattern, within=emb.values()) is not None


def _verify_12(host, cert: Certificate12) -> bool:
    if not isinstance(host, WeightedPoset):
        return False
    try:
        pattern = pattern_12(cert.kind, cert.t)
    except (ValueError, TypeError):
        return False
    P, emb = host.poset, cert.embedding
    if not _embedding_ok(P, pattern.poset, emb) or not _same_relations(P, pattern.poset, emb):
        return False
    for p, w in pattern.weights.items():
        hw = host.weight(emb[p])
        if w is ANY:
            if hw not in (1, 2):
                return False
        elif hw != w:
            return False
    return find_weighted_embedding(host, pattern, within=emb.values()) is not None


def _verify_two_plus_two(host, witness: PatternWitness) -> bool:
    P = host.poset if isinstance(host, WeightedPoset) else host
    els = witness.elements
    if len(els) != 4 or len(set(els)) != 4 or any(v not in P for v in els):
        return False
    a, b, x, y = els
    if not (P.less(a, b) and P.less(x, y)):
        return False
    return all(P.incomparable(u, v) for u in (a, b) for v in (x, y))


def _verify_cycle(host, C: QualifyingCycle) -> bool:
    if not isinstance(host, WeightedPoset):
        return False
    P = host.poset
    verts = C.vertices
    if len(verts) < 2 or len(set(verts)) != len(verts) or any(v not in P for v in verts):
        return False
    total = EpsWeight(0, 0)
    for i, u in enumerate(verts):
        v = verts[(i + 1) % len(verts)]
        if P.less(v, u):
            total = total + EpsWeight(-host.weight(v), 1)
        elif P.incomparable(u, v):
            total = total + EpsWeight(host.weight(u), 0)
        else:
            return False
    return total.is_negative()


def verify_certificate(host, cert) -> bool:
    """Independently check a certificate against its host.

    Accepts :class:`Certificate01`, :class:`Certificate12`, a 2+2
    :class:`PatternWitness` (the obstruction to being an interval order) and
    a :class:`QualifyingCycle` (for arbitrary prescribed lengths).  Never
    raises on malformed certificates; returns ``False`` instead.
    """
    try:
        if isinstance(cert, Certificate01):
            return _verify_01(host, cert)
        if isinstance(cert, Certificate12):
            return _verify_12(host, cert)
        if isinstance(cert, PatternWitness) and cert.kind is PatternKind.TWO_PLUS_TWO:
            return _verify_two_plus_two(host, cert)
        if isinstance(cert, QualifyingCycle):
            return _verify_cycle(host, cert)
    except (KeyError, TypeError, ValueError):
        return False
    return False


def induced_relations(host, cert) -> list:
    """Full relation of the host restricted to the certificate's image."""
    P = host.poset if isinstance(host, WeightedPoset) else host
    if isinstance(cert, QualifyingCycle):
        image = set(cert.vertices)
    elif isinstance(cert, PatternWitness):
        image = set(cert.elements)
    else:
        image = set(cert.embedding.values())
    return [(u, v) for (u, v) in P.relation_pairs() if u in image and v in image]

