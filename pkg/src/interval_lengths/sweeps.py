"""Agreement sweeps between the digraph pipeline and the oracles.

Each sweep returns a :class:`SweepReport`.  A report is clean when it has
no disagreements, no unsound artifacts and no structural failures.  The
``stress`` command and the acceptance tests both run these sweeps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .certificates import Certificate01, Certificate12, verify_certificate
from .oracle import Setting, build_system, enumerate_posets, fm_feasible, forbidden_scan, random_instance
from .patterns import H_ELEMENTS, Kind12, fig3_pattern, h_poset, pattern_12
from .poset import PatternKind, Poset, WeightedPoset, find_pattern, find_weighted_embedding, induced
from .represent import (
    IntervalRepresentation,
    canonical_01_weights,
    represent,
    represent_01,
    represent_12,
    verify_representation,
)

# Keep failure lists short; the counts stay exact.
_MAX_RECORDED = 20


@dataclass
class SweepReport:
    name: str
    instances: int = 0
    accepted: int = 0
    rejected: int = 0
    disagreements: int = 0
    unsound: int = 0
    structural: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.instances > 0 and not (self.disagreements or self.unsound or self.structural)

    def _fail(self, counter: str, message: str) -> None:
        setattr(self, counter, getattr(self, counter) + 1)
        if len(self.failures) < _MAX_RECORDED:
            self.failures.append(message)

    def summary(self) -> str:
        return (
            f"{self.name}: {self.instances} instances, {self.accepted} accepted, "
            f"{self.rejected} rejected, {self.disagreements} disagreements, "
            f"{self.unsound} unsound artifacts, {self.structural} structural failures"
        )


def interval_orders(n: int):
    """Every labeled poset on ``n`` points without an induced 2+2."""
    for P in enumerate_posets(n):
        if find_pattern(P, PatternKind.TWO_PLUS_TWO) is None:
            yield P


def _witness_intervals(W: WeightedPoset, solution: dict) -> IntervalRepresentation:
    return IntervalRepresentation({x: (solution[x], solution[x] + W.weight(x)) for x in W.elements})


# ---------------------------------------------------------------------------
# {0,1}
# ---------------------------------------------------------------------------


def check_01(P: Poset, report: SweepReport) -> None:
    report.instances += 1
    result = represent_01(P)
    by_digraph = isinstance(result, IntervalRepresentation)
    if by_digraph:
        report.accepted += 1
        if verify_representation(canonical_01_weights(P), result):
            report._fail("unsound", f"invalid representation for {P.relation_pairs()}")
    else:
        report.rejected += 1
        if not verify_certificate(P, result):
            report._fail("unsound", f"invalid certificate {result} for {P.relation_pairs()}")
    no_bad = find_pattern(P, PatternKind.BAD_THREE_PLUS_ONE) is None
    scan = forbidden_scan(P, Setting.ZERO_ONE)
    if scan is not None and not verify_certificate(P, scan):
        report._fail("unsound", f"invalid scan certificate {scan} for {P.relation_pairs()}")
    if not (by_digraph == no_bad == (scan is None)):
        report._fail(
            "disagreements",
            f"{P.relation_pairs()}: digraph={by_digraph} no_bad_3+1={no_bad} no_H={scan is None}",
        )


def sweep_01(max_n: int = 6) -> SweepReport:
    """All interval orders on at most ``max_n`` points."""
    report = SweepReport(f"01 agreement, n <= {max_n}")
    for n in range(max_n + 1):
        for P in interval_orders(n):
            check_01(P, report)
    return report


# ---------------------------------------------------------------------------
# {1,2}
# ---------------------------------------------------------------------------


def _fig3_embeds(W: WeightedPoset) -> bool:
    return any(find_weighted_embedding(W, fig3_pattern(k)) is not None for k in (Kind12.FIG3_LEFT, Kind12.FIG3_RIGHT))


def check_cycle_structure(W: WeightedPoset, cycle, report: SweepReport) -> None:
    """Unit part at least -1, simple, and one minus run unless a weighted
    3+1 of the two rejected kinds embeds."""
    where = f"cycle {list(cycle.vertices)} of {W.poset.relation_pairs()} f={W.weight_list()}"
    if cycle.total.m < -1:
        report._fail("structural", f"{where}: unit part {cycle.total.m} < -1")
    if len(set(cycle.vertices)) != len(cycle.vertices):
        report._fail("structural", f"{where}: not simple")
    if not _fig3_embeds(W):
        if cycle.sign_changes() != 2:
            report._fail("structural", f"{where}: {cycle.sign_changes()} sign changes")


def check_12(W: WeightedPoset, report: SweepReport) -> None:
    report.instances += 1
    result = represent_12(W)
    by_digraph = isinstance(result, IntervalRepresentation)
    if by_digraph:
        report.accepted += 1
        if verify_representation(W, result):
            report._fail("unsound", f"invalid representation for {W.poset.relation_pairs()} f={W.weight_list()}")
    else:
        report.rejected += 1
        if not verify_certificate(W, result):
            report._fail("unsound", f"invalid certificate {result}")
        check_cycle_structure(W, result.cycle, report)
    fm = fm_feasible(build_system(W))
    if fm.feasible and verify_representation(W, _witness_intervals(W, fm.solution)):
        report._fail("unsound", f"invalid elimination witness for {W.poset.relation_pairs()} f={W.weight_list()}")
    scan = forbidden_scan(W, Setting.ONE_TWO)
    if scan is not None and not verify_certificate(W, scan):
        report._fail("unsound", f"invalid scan certificate {scan}")
    if not (by_digraph == fm.feasible == (scan is None)):
        report._fail(
            "disagreements",
            f"{W.poset.relation_pairs()} f={W.weight_list()}: digraph={by_digraph} "
            f"elimination={fm.feasible} no_F={scan is None}",
        )


def sweep_12(max_n: int = 5) -> SweepReport:
    """All interval orders on at most ``max_n`` points, all {1,2} weights."""
    report = SweepReport(f"12 agreement, n <= {max_n}")
    for n in range(max_n + 1):
        for P in interval_orders(n):
            for ws in itertools.product((1, 2), repeat=n):
                check_12(WeightedPoset(P, dict(zip(P.elements, ws))), report)
    return report


# ---------------------------------------------------------------------------
# Unit lengths
# ---------------------------------------------------------------------------


def sweep_scott_suppes(max_n: int = 5) -> SweepReport:
    """Unit lengths are feasible exactly when there is no 2+2 and no 3+1."""
    report = SweepReport(f"unit lengths, n <= {max_n}")
    for n in range(max_n + 1):
        for P in enumerate_posets(n):
            report.instances += 1
            W = WeightedPoset(P, dict.fromkeys(P.elements, 1))
            semiorder = (
                find_pattern(P, PatternKind.TWO_PLUS_TWO) is None
                and find_pattern(P, PatternKind.THREE_PLUS_ONE) is None
            )
            fm = fm_feasible(build_system(W)).feasible
            if find_pattern(P, PatternKind.TWO_PLUS_TWO) is None:
                by_digraph = isinstance(represent(W), IntervalRepresentation)
            else:
                by_digraph = False
            report.accepted += fm
            report.rejected += not fm
            if not (semiorder == fm == by_digraph):
                report._fail(
                    "disagreements",
                    f"{P.relation_pairs()}: semiorder={semiorder} elimination={fm} digraph={by_digraph}",
                )
    return report


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def sweep_random(n: int = 12, samples: int = 1000, seed: int = 0, setting=Setting.ONE_TWO) -> SweepReport:
    """Soundness of every artifact on seeded random interval orders."""
    setting = Setting(setting)
    report = SweepReport(f"random soundness, setting {setting.value}, n = {n}, {samples} samples, seed {seed}")
    for i in range(samples):
        W = random_instance(n, setting, seed * 1_000_003 + i)
        report.instances += 1
        if setting is Setting.ZERO_ONE:
            host = W.poset
            result = represent_01(host)
            checked = canonical_01_weights(host)
        else:
            host = checked = W
            result = represent_12(W)
        if isinstance(result, IntervalRepresentation):
            report.accepted += 1
            if verify_representation(checked, result):
                report._fail("unsound", f"sample {i}: invalid representation")
        else:
            report.rejected += 1
            if not verify_certificate(host, result):
                report._fail("unsound", f"sample {i}: invalid certificate {result}")
    return report


# ---------------------------------------------------------------------------
# Minimality and the weighted 3+1
# ---------------------------------------------------------------------------


def _delete(host, x):
    keep = [y for y in host.elements if y != x]
    if isinstance(host, WeightedPoset):
        return host.induced(keep)
    return induced(host, keep)


def _covers_all(cert, host) -> bool:
    return sorted(cert.embedding.values()) == sorted(host.elements)


def sweep_minimality(max_t: int = 2) -> SweepReport:
    """Each H poset and each F member with ``t <= max_t`` is rejected with a
    certificate spanning all of its points, and every one-point deletion is
    accepted.

    ``F2`` with ``t = 0`` is the weighted 3+1 with ``f(x) = 1``, so it is
    certified as ``Fig3Right``.
    """
    report = SweepReport(f"minimality, H and F with t <= {max_t}")
    for index in (1, 2, 3, 4):
        H = h_poset(index)
        report.instances += 1
        cert = represent_01(H)
        if not isinstance(cert, Certificate01) or cert.family_index != index or not _covers_all(cert, H) or not verify_certificate(H, cert):
            report._fail("disagreements", f"H{index}: got {cert}")
        else:
            report.rejected += 1
        for x in H_ELEMENTS:
            if not isinstance(represent_01(_delete(H, x)), IntervalRepresentation):
                report._fail("disagreements", f"H{index} minus {x} is rejected")
    for family in (1, 2, 3, 4):
        for t in range(max_t + 1):
            pattern = pattern_12(Kind12(f"F{family}"), t)
            for fa, fb in itertools.product((1, 2), repeat=2):
                weights = dict(pattern.weights)
                weights["a"], weights["b"] = fa, fb
                W = WeightedPoset(pattern.poset, weights)
                report.instances += 1
                cert = represent_12(W)
                expected = (Kind12.FIG3_RIGHT, None) if (family, t) == (2, 0) else (Kind12(f"F{family}"), t)
                if not isinstance(cert, Certificate12) or (cert.kind, cert.t) != expected or not _covers_all(cert, W) or not verify_certificate(W, cert):
                    report._fail("disagreements", f"F{family}(t={t}) f(a)={fa} f(b)={fb}: got {cert}")
                else:
                    report.rejected += 1
                for x in W.elements:
                    if not isinstance(represent_12(_delete(W, x)), IntervalRepresentation):
                        report._fail("disagreements", f"F{family}(t={t}) f(a)={fa} f(b)={fb} minus {x} is rejected")
    return report


def three_plus_one_weightings() -> SweepReport:
    """All 16 {1,2} weightings of the 3+1 ``b < y < a`` plus ``x``.

    Rejected exactly when ``f(y) = 2`` or ``f(x) = 1``.
    """
    report = SweepReport("weighted 3+1")
    P = fig3_pattern(Kind12.FIG3_LEFT).poset
    for ws in itertools.product((1, 2), repeat=4):
        W = WeightedPoset(P, dict(zip(P.elements, ws)))
        report.instances += 1
        accepted = isinstance(represent_12(W), IntervalRepresentation)
        report.accepted += accepted
        report.rejected += not accepted
        expected = not (W.weight("y") == 2 or W.weight("x") == 1)
        if accepted != expected:
            report._fail("disagreements", f"f={dict(zip(P.elements, ws))}: accepted={accepted}")
    return report
