"""Certificate data model and its canonical JSON wire form.

A certificate records everything needed to re-check a solution-set claim for
(a^n - 1)(b^n - 1) = x^2: theorem gates, sieve witnesses, explicitly tested
exponents, and any residue classes the sieve failed to eliminate.

The wire form is deliberately rigid so that equal certificates are equal
bytes: UTF-8 JSON, lexicographically sorted keys, no insignificant
whitespace, every integer a decimal string, one trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

__all__ = [
    "CertificateError",
    "ValueForm",
    "GateKind",
    "CertificateStatus",
    "ResidueClass",
    "Witness",
    "GateStep",
    "ExceptionalCheck",
    "Certificate",
    "certificate_to_json",
    "certificate_from_json",
]

SCHEMA_VERSION = "1"


class CertificateError(ValueError):
    """Raised when a document does not parse as a certificate."""


class ValueForm(str, Enum):
    RAW = "RAW"  # (a^n - 1)(b^n - 1) mod m
    FACTORED = "FACTORED"  # geometric sums; needs (a-1)(b-1) to be a square


class GateKind(str, Enum):
    # structural theorems about even exponents
    COPRIME_SINGLY_EVEN = "COPRIME_SINGLY_EVEN"  # gcd = 1: n = 2 mod 4 forces n = 2
    MIXED_TWO_ADIC_COMMON_FACTOR = "MIXED_TWO_ADIC_COMMON_FACTOR"  # nu2 differs, gcd > 1: no even n
    QUARTIC_EXPONENT = "QUARTIC_EXPONENT"  # 4 | n forces n = 4 (Cohn)
    COMMON_FACTOR_SQUARE_EXCESS = "COMMON_FACTOR_SQUARE_EXCESS"  # gcd^2 > a or > b: no even n
    NESTED_DIVISOR = "NESTED_DIVISOR"  # a | b with a > b/a: no even n
    ODD_COFACTOR_MOD_FOUR = "ODD_COFACTOR_MOD_FOUR"  # odd bases, cofactor 3 mod 4: no n = 2 mod 4
    # whole-line structural results for special shapes
    BASES_2_50 = "BASES_2_50"  # the pair (2,50): only n = 1
    EVEN_SQUARE_MULTIPLE = "EVEN_SQUARE_MULTIPLE"  # b = a c^2, c even: no n at all


class CertificateStatus(str, Enum):
    COMPLETE = "COMPLETE"
    PARTIAL = "PARTIAL"


@dataclass(frozen=True, order=True)
class ResidueClass:
    """Exponents n with n = r (mod modulus)."""

    modulus: int
    r: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("class modulus must be >= 1")
        if not 0 <= self.r < self.modulus:
            raise ValueError("class representative must lie in [0, modulus)")

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.r


@dataclass(frozen=True)
class Witness:
    """A modulus whose value set over one exponent class avoids all squares.

    The claim covers members of `cls` strictly above `preperiod_bound`;
    smaller members must be handled by explicit checks or gates.
    """

    cls: ResidueClass
    modulus: int
    form: ValueForm
    preperiod_bound: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 3:
            raise ValueError("witness modulus must be >= 3")
        if self.preperiod_bound < 1:
            raise ValueError("preperiod bound must be >= 1")
        if not self.values:
            raise ValueError("witness must carry at least one value")
        for v in self.values:
            if not 0 <= v < self.modulus:
                raise ValueError("witness values must lie in [0, modulus)")


@dataclass(frozen=True)
class GateStep:
    """One applicable structural theorem and what it eliminated."""

    kind: GateKind
    classes_eliminated: tuple[ResidueClass, ...]
    residual_explicit_n: tuple[int, ...]
    hypothesis_trace: str


@dataclass(frozen=True)
class ExceptionalCheck:
    """Outcome of testing one small exponent exactly."""

    n: int
    is_solution: bool
    x: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("exceptional exponent must be >= 1")
        if self.is_solution and (self.x is None or self.x < 0):
            raise ValueError("a solution entry must carry its root x")
        if not self.is_solution and self.x is not None:
            raise ValueError("a non-solution entry must not carry a root")


@dataclass(frozen=True)
class Certificate:
    a: int
    b: int
    claim: str
    known_solutions: tuple[tuple[int, int], ...]  # (n, x), ascending in n
    gate_steps: tuple[GateStep, ...]
    sieve_classes: tuple[Witness, ...]
    exceptional_n: tuple[ExceptionalCheck, ...]
    assumptions: tuple[str, ...]
    surviving_classes: tuple[ResidueClass, ...] = field(default=())
    status: CertificateStatus = CertificateStatus.COMPLETE


def _class_doc(cls: ResidueClass) -> dict:
    return {"modulus": str(cls.modulus), "r": str(cls.r)}


def certificate_to_json(cert: Certificate) -> str:
    """Canonical wire form; equal certificates serialize to equal bytes."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "pair": {"a": str(cert.a), "b": str(cert.b)},
        "claim": cert.claim,
        "known_solutions": [{"n": str(n), "x": str(x)} for n, x in cert.known_solutions],
        "gate_steps": [
            {
                "kind": step.kind.value,
                "classes_eliminated": [_class_doc(c) for c in step.classes_eliminated],
                "residual_explicit_n": [str(n) for n in step.residual_explicit_n],
                "hypothesis_trace": step.hypothesis_trace,
            }
            for step in cert.gate_steps
        ],
        "sieve_classes": [
            {
                "class": _class_doc(w.cls),
                "modulus": str(w.modulus),
                "value_form": w.form.value,
                "preperiod_bound": str(w.preperiod_bound),
                "values": [str(v) for v in w.values],
            }
            for w in cert.sieve_classes
        ],
        "exceptional_n": [
            {"n": str(e.n), "is_solution": e.is_solution}
            | ({"x": str(e.x)} if e.is_solution else {})
            for e in cert.exceptional_n
        ],
        "assumptions": list(cert.assumptions),
        "surviving_classes": [_class_doc(c) for c in cert.surviving_classes],
        "status": cert.status.value,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def _want(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise CertificateError(f"{path}: expected an object")
    if key not in doc:
        raise CertificateError(f"{path}.{key}: missing")
    return doc[key]


def _to_int(value, path: str) -> int:
    if not isinstance(value, str):
        raise CertificateError(f"{path}: integers must be decimal strings")
    ok = value.isascii() and value.isdigit() and (value == "0" or value[0] != "0")
    if not ok:
        raise CertificateError(f"{path}: not a canonical decimal integer")
    return int(value)


def _to_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise CertificateError(f"{path}: expected a string")
    return value


def _to_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise CertificateError(f"{path}: expected an array")
    return value


def _to_enum(enum_cls, value, path: str):
    if not isinstance(value, str):
        raise CertificateError(f"{path}: expected a string")
    try:
        return enum_cls(value)
    except ValueError:
        raise CertificateError(f"{path}: not one of {[e.value for e in enum_cls]}") from None


def _parse_class(doc, path: str) -> ResidueClass:
    modulus = _to_int(_want(doc, "modulus", path), f"{path}.modulus")
    r = _to_int(_want(doc, "r", path), f"{path}.r")
    try:
        return ResidueClass(modulus, r)
    except ValueError as exc:
        raise CertificateError(f"{path}: {exc}") from None


def certificate_from_json(text: str) -> Certificate:
    """Parse and structurally validate; content checks belong to verify()."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"document: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise CertificateError("document: expected a JSON object")
    version = _to_str(_want(doc, "schema_version", "document"), "schema_version")
    if version != SCHEMA_VERSION:
        raise CertificateError(f"schema_version: unsupported ({version!r})")

    pair = _want(doc, "pair", "document")
    a = _to_int(_want(pair, "a", "pair"), "pair.a")
    b = _to_int(_want(pair, "b", "pair"), "pair.b")

    claim = _to_str(_want(doc, "claim", "document"), "claim")

    known = []
    for i, item in enumerate(_to_list(_want(doc, "known_solutions", "document"), "known_solutions")):
        path = f"known_solutions[{i}]"
        known.append((_to_int(_want(item, "n", path), f"{path}.n"), _to_int(_want(item, "x", path), f"{path}.x")))

    steps = []
    for i, item in enumerate(_to_list(_want(doc, "gate_steps", "document"), "gate_steps")):
        path = f"gate_steps[{i}]"
        kind = _to_enum(GateKind, _want(item, "kind", path), f"{path}.kind")
        classes = tuple(
            _parse_class(c, f"{path}.classes_eliminated[{j}]")
            for j, c in enumerate(_to_list(_want(item, "classes_eliminated", path), f"{path}.classes_eliminated"))
        )
        residual = tuple(
            _to_int(n, f"{path}.residual_explicit_n[{j}]")
            for j, n in enumerate(_to_list(_want(item, "residual_explicit_n", path), f"{path}.residual_explicit_n"))
        )
        trace = _to_str(_want(item, "hypothesis_trace", path), f"{path}.hypothesis_trace")
        steps.append(GateStep(kind, classes, residual, trace))

    witnesses = []
    for i, item in enumerate(_to_list(_want(doc, "sieve_classes", "document"), "sieve_classes")):
        path = f"sieve_classes[{i}]"
        cls = _parse_class(_want(item, "class", path), f"{path}.class")
        modulus = _to_int(_want(item, "modulus", path), f"{path}.modulus")
        form = _to_enum(ValueForm, _want(item, "value_form", path), f"{path}.value_form")
        bound = _to_int(_want(item, "preperiod_bound", path), f"{path}.preperiod_bound")
        values = tuple(
            _to_int(v, f"{path}.values[{j}]")
            for j, v in enumerate(_to_list(_want(item, "values", path), f"{path}.values"))
        )
        try:
            witnesses.append(Witness(cls, modulus, form, bound, values))
        except ValueError as exc:
            raise CertificateError(f"{path}: {exc}") from None

    exceptional = []
    for i, item in enumerate(_to_list(_want(doc, "exceptional_n", "document"), "exceptional_n")):
        path = f"exceptional_n[{i}]"
        n = _to_int(_want(item, "n", path), f"{path}.n")
        flag = _want(item, "is_solution", path)
        if not isinstance(flag, bool):
            raise CertificateError(f"{path}.is_solution: expected a boolean")
        x = _to_int(_want(item, "x", path), f"{path}.x") if flag else None
        if not flag and "x" in item:
            raise CertificateError(f"{path}.x: forbidden on a non-solution entry")
        try:
            exceptional.append(ExceptionalCheck(n, flag, x))
        except ValueError as exc:
            raise CertificateError(f"{path}: {exc}") from None

    assumptions = tuple(
        _to_str(s, f"assumptions[{i}]")
        for i, s in enumerate(_to_list(_want(doc, "assumptions", "document"), "assumptions"))
    )

    surviving = tuple(
        _parse_class(c, f"surviving_classes[{i}]")
        for i, c in enumerate(_to_list(_want(doc, "surviving_classes", "document"), "surviving_classes"))
    )

    status = _to_enum(CertificateStatus, _want(doc, "status", "document"), "status")

    if a < 2 or b <= a:
        raise CertificateError("pair: requires 2 <= a < b")

    return Certificate(
        a=a,
        b=b,
        claim=claim,
        known_solutions=tuple(known),
        gate_steps=tuple(steps),
        sieve_classes=tuple(witnesses),
        exceptional_n=tuple(exceptional),
        assumptions=assumptions,
        surviving_classes=surviving,
        status=status,
    )
