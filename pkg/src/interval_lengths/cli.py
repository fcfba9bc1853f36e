"""Instance files, artifact serialization and the ``interval-lengths`` CLI.

Instance file::

    {"elements": ["a", "b"], "relations": [["a", "b"]],
     "relation_mode": "covers", "weights": {"a": 1, "b": 1}, "setting": "12"}

``setting`` is ``"01"`` (find lengths in {0,1}), ``"12"`` (the given
lengths, all in {1,2}) or ``"given"`` (the given non-negative lengths).  It
defaults to ``"given"`` when weights are present and ``"01"`` otherwise.

Exit codes: 0 representable or valid, 1 not representable or invalid (an
artifact is printed either way), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .certificates import Certificate01, Certificate12, induced_relations, verify_certificate
from .digraph import EpsWeight, QualifyingCycle, epsilon
from .errors import DuplicateElement, IntervalLengthsError, PosetError, SizeLimit, TooManyVariables
from .oracle import Setting, build_system, fm_feasible
from .patterns import Kind12
from .poset import PatternKind, PatternWitness, Poset, WeightedPoset, find_pattern, from_relations
from .represent import (
    IntervalRepresentation,
    canonical_01_weights,
    represent,
    represent_01,
    represent_12,
    verify_representation,
)
from . import sweeps

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2

SETTINGS = ("01", "12", "given")


class ParseError(IntervalLengthsError):
    """Malformed JSON; ``line`` and ``column`` locate the problem."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(IntervalLengthsError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceDocument:
    elements: tuple
    relations: tuple
    relation_mode: str = "covers"
    weights: dict | None = None
    setting: str = "01"

    def poset(self) -> Poset:
        return from_relations(self.elements, self.relations, mode=self.relation_mode)

    def weighted(self) -> WeightedPoset:
        """The instance with the weights its setting calls for."""
        P = self.poset()
        if self.setting == "01":
            return canonical_01_weights(P)
        return WeightedPoset(P, self.weights)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _string_list(value, field_name: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValidationError(f"field {field_name!r} must be a list of strings")
    return value


def parse_instance(text: str) -> InstanceDocument:
    """Parse and validate an instance document.

    Raises:
        ParseError: the text is not JSON.
        ValidationError: the document does not describe a valid instance.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ValidationError("instance must be a JSON object")
    unknown = sorted(set(doc) - {"elements", "relations", "relation_mode", "weights", "setting"})
    if unknown:
        raise ValidationError(f"unknown field {unknown[0]!r}")
    if "elements" not in doc:
        raise ValidationError("missing field 'elements'")
    elements = _string_list(doc["elements"], "elements")
    raw_rel = doc.get("relations", [])
    if not isinstance(raw_rel, list):
        raise ValidationError("field 'relations' must be a list of pairs")
    relations = []
    for pair in raw_rel:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, str) for v in pair)):
            raise ValidationError(f"field 'relations': {pair!r} is not a pair of element names")
        relations.append(tuple(pair))
    mode = doc.get("relation_mode", "covers")
    if mode not in ("covers", "full"):
        raise ValidationError(f"field 'relation_mode' must be 'covers' or 'full', got {mode!r}")

    weights = doc.get("weights")
    if weights is not None:
        if not isinstance(weights, dict):
            raise ValidationError("field 'weights' must map element names to integers")
        for x, w in weights.items():
            if x not in elements:
                raise ValidationError(f"field 'weights': unknown element {x!r}")
            if isinstance(w, bool) or not isinstance(w, int) or w < 0:
                raise ValidationError(f"field 'weights': weight of {x!r} must be a non-negative integer, got {w!r}")
        missing = [x for x in elements if x not in weights]
        if missing:
            raise ValidationError(f"field 'weights': no weight for element {missing[0]!r}")
    setting = doc.get("setting", "given" if weights is not None else "01")
    if setting not in SETTINGS:
        raise ValidationError(f"field 'setting' must be one of {', '.join(SETTINGS)}, got {setting!r}")
    if setting in ("12", "given") and weights is None:
        raise ValidationError(f"field 'weights' is required for setting {setting!r}")
    if setting == "12":
        bad = [x for x in elements if weights[x] not in (1, 2)]
        if bad:
            raise ValidationError(f"field 'weights': weight of {bad[0]!r} must be 1 or 2 in setting '12'")

    document = InstanceDocument(tuple(elements), tuple(relations), mode, weights, setting)
    try:
        document.poset()
    except DuplicateElement as exc:
        raise ValidationError(f"field 'elements': {exc}") from None
    except PosetError as exc:
        raise ValidationError(f"field 'relations': {exc}") from None
    return document


# ---------------------------------------------------------------------------
# Rationals and artifacts
# ---------------------------------------------------------------------------


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text) -> Fraction:
    """Read an integer or a ``"p/q"`` string; decimals are refused."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValidationError(f"{text!r} is not a rational number")
    if isinstance(text, str) and not _RATIONAL.fullmatch(text.strip()):
        raise ValidationError(f"{text!r} is not a rational number of the form p/q")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValidationError(f"{text!r} has a zero denominator") from None


def representation_to_json(rep: IntervalRepresentation, elements, epsilon_info: bool = False) -> dict:
    eps = rep.epsilon if rep.epsilon is not None else epsilon(len(elements))
    out = {
        "epsilon": format_rational(eps),
        "intervals": {x: [format_rational(lo), format_rational(hi)] for x, (lo, hi) in ((x, rep[x]) for x in elements)},
    }
    if epsilon_info and rep.potentials is not None:
        out["potentials"] = {x: {"unit": rep.potentials[x].m, "eps": -rep.potentials[x].k} for x in elements}
    return out


def representation_from_json(doc) -> IntervalRepresentation:
    if not isinstance(doc, dict) or not isinstance(doc.get("intervals"), dict):
        raise ValidationError("representation must have an 'intervals' object")
    intervals = {}
    for x, pair in doc["intervals"].items():
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValidationError(f"interval of {x!r} must be a pair of rationals")
        intervals[x] = (parse_rational(pair[0]), parse_rational(pair[1]))
    return IntervalRepresentation(intervals)


def _image_weights(W: WeightedPoset, image) -> dict:
    return {x: W.weight(x) for x in W.elements if x in image}


def certificate_to_json(cert, W: WeightedPoset, setting: str) -> dict:
    """Certificate file contents; ``W`` carries the weights of the setting."""
    P = W.poset
    out = {"setting": setting}
    if isinstance(cert, Certificate01):
        out.update(kind=cert.kind, family_index=cert.family_index, t=None, embedding=dict(cert.embedding))
        image = set(cert.embedding.values())
    elif isinstance(cert, Certificate12):
        out.update(kind=cert.kind.value, t=cert.t, embedding=dict(cert.embedding))
        image = set(cert.embedding.values())
    elif isinstance(cert, PatternWitness):
        out.update(kind=cert.kind.value, t=None, embedding=cert.labeled())
        image = set(cert.elements)
    elif isinstance(cert, QualifyingCycle):
        out.update(kind="NegativeCycle", t=None, embedding={}, cycle=list(cert.vertices))
        image = set(cert.vertices)
    else:
        raise TypeError(f"not a certificate: {cert!r}")
    out["induced_relations"] = [list(p) for p in induced_relations(P, cert)]
    out["weights"] = _image_weights(W, image)
    return out


def certificate_from_json(doc):
    """Rebuild a certificate object from its JSON form."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValidationError("certificate must be an object with a 'kind'")
    kind, emb = doc["kind"], doc.get("embedding", {})
    if not isinstance(emb, dict):
        raise ValidationError("certificate 'embedding' must be an object")
    if kind == "TwoPlusTwo":
        try:
            return PatternWitness(PatternKind.TWO_PLUS_TWO, tuple(emb[k] for k in "abxy"))
        except KeyError as exc:
            raise ValidationError(f"2+2 embedding lacks label {exc}") from None
    if kind == "NegativeCycle":
        cycle = doc.get("cycle")
        if not isinstance(cycle, list) or not all(isinstance(v, str) for v in cycle):
            raise ValidationError("certificate 'cycle' must be a list of element names")
        return QualifyingCycle(tuple(cycle), (), EpsWeight(0, 0))
    if isinstance(kind, str) and kind[:1] == "H" and kind[1:] in ("1", "2", "3", "4"):
        return Certificate01(int(kind[1:]), dict(emb))
    try:
        kind12 = Kind12(kind)
    except ValueError:
        raise ValidationError(f"unknown certificate kind {kind!r}") from None
    t = doc.get("t")
    if kind12.family is not None and (isinstance(t, bool) or not isinstance(t, int)):
        raise ValidationError(f"certificate of kind {kind} needs an integer 't'")
    return Certificate12(kind12, t if kind12.family is not None else None, dict(emb))


def check_certificate_document(doc: dict, document: InstanceDocument) -> list:
    """Problems with a certificate file; empty means it is valid."""
    W = document.weighted()
    cert = certificate_from_json(doc)
    host = W.poset if isinstance(cert, Certificate01) else W
    problems = []
    if not verify_certificate(host, cert):
        problems.append(f"{doc['kind']} certificate does not verify against the instance")
        return problems
    expected = certificate_to_json(cert, W, document.setting)
    if doc.get("induced_relations") != expected["induced_relations"]:
        problems.append("field 'induced_relations' does not match the instance")
    if doc.get("weights") != expected["weights"]:
        problems.append("field 'weights' does not match the instance")
    if doc.get("setting") != document.setting:
        problems.append(f"certificate setting {doc.get('setting')!r} differs from instance setting {document.setting!r}")
    return problems


def check_representation_document(doc: dict, document: InstanceDocument) -> list:
    """Violations of a representation file; empty means it is valid.

    In setting ``"01"`` every length must be 0 or 1; the lengths themselves
    are read from the file.
    """
    rep = representation_from_json(doc)
    P = document.poset()
    missing = [x for x in P.elements if x not in rep.intervals]
    if missing:
        return [f"no interval for element {missing[0]!r}"]
    extra = [x for x in rep.intervals if x not in P]
    if extra:
        return [f"interval for unknown element {extra[0]!r}"]
    if document.setting == "01":
        lengths = {x: hi - lo for x, (lo, hi) in rep.intervals.items()}
        bad = [x for x in P.elements if lengths[x] not in (0, 1)]
        if bad:
            return [f"length of {x!r} is {format_rational(lengths[x])}, not 0 or 1" for x in bad]
        W = WeightedPoset(P, {x: int(lengths[x]) for x in P.elements})
    else:
        W = document.weighted()
    return [v.detail for v in verify_representation(W, rep)]


# ---------------------------------------------------------------------------
# Pipelines
# ---------------------------------------------------------------------------


def solve(document: InstanceDocument):
    """Representation or certificate for the instance's setting."""
    P = document.poset()
    witness = find_pattern(P, PatternKind.TWO_PLUS_TWO)
    if witness is not None:
        return witness
    if document.setting == "01":
        return represent_01(P)
    W = document.weighted()
    if document.setting == "12":
        return represent_12(W)
    return represent(W)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _text_representation(rep_json: dict) -> str:
    lines = [f"epsilon: {rep_json['epsilon']}"]
    lines += [f"{x}: [{lo}, {hi}]" for x, (lo, hi) in rep_json["intervals"].items()]
    if "potentials" in rep_json:
        lines += [f"p({x}) = {p['unit']} {'+' if p['eps'] >= 0 else '-'} {abs(p['eps'])}eps" for x, p in rep_json["potentials"].items()]
    return "\n".join(lines) + "\n"


def _text_certificate(cert_json: dict) -> str:
    kind = cert_json["kind"]
    head = f"not representable: {kind}" + (f" (t = {cert_json['t']})" if cert_json.get("t") is not None else "")
    lines = [head]
    if "cycle" in cert_json:
        lines.append("cycle: " + " -> ".join(cert_json["cycle"] + cert_json["cycle"][:1]))
    lines += [f"{label} -> {x}" for label, x in cert_json["embedding"].items()]
    lines += [f"{u} < {v}" for u, v in cert_json["induced_relations"]]
    return "\n".join(lines) + "\n"


def _emit_result(document, result, args, out) -> int:
    if isinstance(result, IntervalRepresentation):
        if getattr(args, "normalize", False):
            result = result.normalized()
        rep_json = representation_to_json(result, document.elements, getattr(args, "epsilon_info", False))
        out.write(_dump(rep_json) if args.format == "json" else _text_representation(rep_json))
        return EXIT_OK
    cert_json = certificate_to_json(result, document.weighted(), document.setting)
    out.write(_dump(cert_json) if args.format == "json" else _text_certificate(cert_json))
    return EXIT_REJECTED


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_check(args, out) -> int:
    document = parse_instance(_read(args.instance))
    P = document.poset()
    two_two = find_pattern(P, PatternKind.TWO_PLUS_TWO)
    report = {
        "elements": len(P),
        "interval_order": two_two is None,
        "unit": two_two is None and find_pattern(P, PatternKind.THREE_PLUS_ONE) is None,
        "zero_one": two_two is None and isinstance(represent_01(P), IntervalRepresentation),
        "one_two": None,
        "given": None,
        "setting": document.setting,
    }
    if document.weights is not None and two_two is None:
        W = WeightedPoset(P, document.weights)
        if all(w in (1, 2) for w in W.weight_list()):
            report["one_two"] = isinstance(represent_12(W), IntervalRepresentation)
        report["given"] = isinstance(represent(W), IntervalRepresentation)
    result = solve(document)
    representable = isinstance(result, IntervalRepresentation)
    report["representable"] = representable
    if not representable:
        report["certificate"] = certificate_to_json(result, document.weighted(), document.setting)
    if args.format == "json":
        out.write(_dump(report))
    else:
        for key, value in report.items():
            if key != "certificate":
                out.write(f"{key}: {json.dumps(value)}\n")
        if not representable:
            out.write(_text_certificate(report["certificate"]))
    return EXIT_OK if representable else EXIT_REJECTED


def cmd_represent(args, out) -> int:
    document = parse_instance(_read(args.instance))
    return _emit_result(document, solve(document), args, out)


def cmd_certify(args, out) -> int:
    document = parse_instance(_read(args.instance))
    result = solve(document)
    if isinstance(result, IntervalRepresentation):
        print("representable; emitting a representation instead of a certificate", file=sys.stderr)
    return _emit_result(document, result, args, out)


def cmd_verify(args, out) -> int:
    document = parse_instance(_read(args.instance))
    artifact = _load_json(_read(args.artifact))
    if isinstance(artifact, dict) and "intervals" in artifact:
        what, problems = "representation", check_representation_document(artifact, document)
    elif isinstance(artifact, dict) and "kind" in artifact:
        what, problems = "certificate", check_certificate_document(artifact, document)
    else:
        raise ValidationError("artifact is neither a representation nor a certificate")
    report = {"artifact": what, "valid": not problems, "violations": problems}
    if args.format == "json":
        out.write(_dump(report))
    else:
        out.write(f"{what}: {'valid' if not problems else 'INVALID'}\n")
        out.writelines(f"  {p}\n" for p in problems)
    return EXIT_OK if not problems else EXIT_REJECTED


def cmd_oracle(args, out) -> int:
    document = parse_instance(_read(args.instance))
    W = document.weighted()
    result = fm_feasible(build_system(W), max_variables=args.max_variables)
    report = {
        "feasible": result.feasible,
        "weights": dict(W.weights),
        "solution": None if result.solution is None else {x: format_rational(v) for x, v in result.solution.items()},
    }
    if args.format == "json":
        out.write(_dump(report))
    else:
        out.write(f"feasible: {json.dumps(result.feasible)}\n")
        if result.solution is not None:
            out.writelines(f"L({x}) = {v}\n" for x, v in report["solution"].items())
    return EXIT_OK if result.feasible else EXIT_REJECTED


def cmd_stress(args, out) -> int:
    if args.max_n < 0 or args.max_n > 6:
        raise SizeLimit(f"--max-n must be between 0 and 6, got {args.max_n}")
    reports = [
        sweeps.sweep_01(args.max_n),
        sweeps.sweep_12(min(args.max_n, 5)),
        sweeps.sweep_scott_suppes(min(args.max_n, 5)),
        sweeps.three_plus_one_weightings(),
        sweeps.sweep_minimality(),
    ]
    for setting in (Setting.ZERO_ONE, Setting.ONE_TWO):
        reports.append(sweeps.sweep_random(args.random_n, args.samples, args.seed, setting))
    for report in reports:
        out.write(("PASS " if report.ok else "FAIL ") + report.summary() + "\n")
        out.writelines(f"  {f}\n" for f in report.failures)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_REJECTED


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interval-lengths",
        description="Interval representations with prescribed lengths, with checkable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_instance(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", help="instance JSON file, or - for stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    with_instance("check", "classify the instance")
    p = with_instance("represent", "print a representation, or a certificate if there is none")
    p.add_argument("--normalize", action="store_true", help="shift so the smallest left endpoint is 0")
    p.add_argument("--epsilon-info", action="store_true", help="include the raw symbolic potentials")
    p = with_instance("certify", "print a certificate, or a representation if there is none")
    p.add_argument("--normalize", action="store_true")
    p = with_instance("verify", "check a representation or certificate file against the instance")
    p.add_argument("artifact", help="representation or certificate JSON file")
    p = with_instance("oracle", "decide the endpoint inequalities by Fourier-Motzkin elimination")
    p.add_argument("--max-variables", type=int, default=12)

    p = sub.add_parser("stress", help="run the agreement sweeps")
    p.add_argument("--max-n", type=int, default=5, help="largest exhaustive size (at most 6; {1,2} sweeps stop at 5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="random instances per setting")
    p.add_argument("--random-n", type=int, default=12, help="size of the random instances")
    return parser


COMMANDS = {
    "check": cmd_check,
    "represent": cmd_represent,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "stress": cmd_stress,
}


def run(argv=None, out=None) -> int:
    """Run one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ParseError, ValidationError, TooManyVariables, SizeLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
