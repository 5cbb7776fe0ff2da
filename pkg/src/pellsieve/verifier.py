"""Independent certificate checker.

Re-derives every machine-checkable claim in a certificate from scratch:
class coverage, witness value sets (by direct modular enumeration, not the
prover's cached profiles), explicit exponent checks, and the hypotheses of
each gate.  Gates themselves rest on published theorems, so a structurally
sound gate is reported ASSUMED rather than PASS; everything else must PASS
for the report to come back ok.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .certificate import (
    Certificate,
    CertificateStatus,
    GateKind,
    ResidueClass,
    ValueForm,
    certificate_from_json,
)

__all__ = ["CheckStatus", "VerificationItem", "VerificationReport", "verify_certificate"]

# refuse to enumerate adversarial cycle lengths or exponent sizes
_STATE_BUDGET = 2_000_000
_EXPONENT_BIT_BUDGET = 4_000_000


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ASSUMED = "ASSUMED"


@dataclass(frozen=True)
class VerificationItem:
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    items: tuple[VerificationItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.status is not CheckStatus.FAIL for item in self.items)

    def failures(self) -> list[VerificationItem]:
        return [item for item in self.items if item.status is CheckStatus.FAIL]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "items": [
                {"name": i.name, "status": i.status.value, "detail": i.detail}
                for i in self.items
            ],
        }


def _nu2(m: int) -> int:
    return (m & -m).bit_length() - 1


def _even_square_factor(a: int, b: int) -> int | None:
    if b % a != 0:
        return None
    c = math.isqrt(b // a)
    if c * c == b // a and c >= 2 and c % 2 == 0:
        return c
    return None


def _gate_shape(kind: GateKind, a: int, b: int):
    """(hypothesis holds, required classes, required residuals) for a gate."""
    g = gcd(a, b)
    if kind is GateKind.COPRIME_SINGLY_EVEN:
        return g == 1, (ResidueClass(4, 2),), (2,)
    if kind is GateKind.MIXED_TWO_ADIC_COMMON_FACTOR:
        return g > 1 and _nu2(a) != _nu2(b), (ResidueClass(2, 0),), ()
    if kind is GateKind.COMMON_FACTOR_SQUARE_EXCESS:
        ok = g > 1 and b % a != 0 and a % b != 0 and (g * g > a or g * g > b)
        return ok, (ResidueClass(2, 0),), ()
    if kind is GateKind.NESTED_DIVISOR:
        return b % a == 0 and a > b // a, (ResidueClass(2, 0),), ()
    if kind is GateKind.ODD_COFACTOR_MOD_FOUR:
        ok = (
            a % 2 == 1
            and b % 2 == 1
            and g > 1
            and (a // g % 4 == 3 or b // g % 4 == 3)
        )
        return ok, (ResidueClass(4, 2),), ()
    if kind is GateKind.QUARTIC_EXPONENT:
        return True, (ResidueClass(4, 0),), (4,)
    if kind is GateKind.BASES_2_50:
        return (a, b) == (2, 50), (ResidueClass(1, 0),), (1,)
    if kind is GateKind.EVEN_SQUARE_MULTIPLE:
        return _even_square_factor(a, b) is not None, (ResidueClass(1, 0),), ()
    raise AssertionError(f"unhandled gate kind {kind}")


def _class_values_by_enumeration(
    a: int, b: int, form: ValueForm, m: int, cls: ResidueClass, bound: int
) -> set[int] | None:
    """Values of the target over {n in cls : n > bound}, walked directly.

    Returns None when the power/sum state does not cycle within budget.
    """
    pa = pb = 1 % m
    sa = sb = 0
    seen: dict[tuple[int, int, int, int], int] = {}
    values: list[int] = []
    state = (pa, sa, pb, sb)
    while state not in seen:
        if len(values) > _STATE_BUDGET:
            return None
        seen[state] = len(values)
        if form is ValueForm.RAW:
            values.append((pa - 1) * (pb - 1) % m)
        else:
            values.append(sa * sb % m)
        sa, sb = (sa + pa) % m, (sb + pb) % m
        pa, pb = pa * a % m, pb * b % m
        state = (pa, sa, pb, sb)
    pre = seen[state]
    period = len(values) - pre
    n = bound + 1 + (cls.r - bound - 1) % cls.modulus
    # past the pre-period the class orbit repeats with period lcm(T, M) in n,
    # so sweeping two of them (plus the ramp-up) is exhaustive
    stop = pre + 2 * math.lcm(period, cls.modulus)
    out: set[int] = set()
    while n < max(stop, bound + 1 + 2 * cls.modulus):
        if n < len(values):
            out.add(values[n])
        else:
            out.add(values[pre + (n - pre) % period])
        n += cls.modulus
    return out


def _recheck_exponent(a: int, b: int, n: int) -> tuple[bool, int | None] | None:
    """Exact square test of (a^n - 1)(b^n - 1); None if too large to attempt."""
    if n * max(a, b).bit_length() > _EXPONENT_BIT_BUDGET:
        return None
    t = (a**n - 1) * (b**n - 1)
    if t < 0:
        return False, None
    r = math.isqrt(t)
    return (True, r) if r * r == t else (False, None)


def verify_certificate(cert: Certificate | str) -> VerificationReport:
    """Check a certificate (object or canonical JSON) from first principles."""
    if isinstance(cert, str):
        cert = certificate_from_json(cert)
    a, b = cert.a, cert.b
    items: list[VerificationItem] = []

    if cert.status is CertificateStatus.COMPLETE and cert.surviving_classes:
        items.append(
            VerificationItem(
                "status",
                CheckStatus.FAIL,
                "COMPLETE certificate lists surviving classes",
            )
        )
    elif cert.status is CertificateStatus.PARTIAL and not cert.surviving_classes:
        items.append(
            VerificationItem(
                "status", CheckStatus.FAIL, "PARTIAL certificate has no surviving classes"
            )
        )
    else:
        items.append(VerificationItem("status", CheckStatus.PASS))

    residual_pool: set[int] = set()
    square_part = math.isqrt((a - 1) * (b - 1)) ** 2 == (a - 1) * (b - 1)
    for i, step in enumerate(cert.gate_steps):
        name = f"gate[{i}].{step.kind.value}"
        holds, classes, residual = _gate_shape(step.kind, a, b)
        if not holds:
            items.append(
                VerificationItem(name, CheckStatus.FAIL, "hypothesis does not hold")
            )
            continue
        if step.classes_eliminated != classes or step.residual_explicit_n != residual:
            items.append(
                VerificationItem(
                    name, CheckStatus.FAIL, "classes or residuals do not match the rule"
                )
            )
            continue
        residual_pool.update(residual)
        items.append(
            VerificationItem(name, CheckStatus.ASSUMED, "rests on a published theorem")
        )

    gate_classes = [
        g for step in cert.gate_steps for g in step.classes_eliminated
    ]
    all_classes = (
        gate_classes
        + [w.cls for w in cert.sieve_classes]
        + list(cert.surviving_classes)
    )
    if all_classes:
        span = math.lcm(*[c.modulus for c in all_classes])
        uncovered = next(
            (
                n
                for n in range(span)
                if not any(c.contains(n) for c in all_classes)
            ),
            None,
        )
        if uncovered is None:
            items.append(VerificationItem("coverage", CheckStatus.PASS))
        else:
            items.append(
                VerificationItem(
                    "coverage",
                    CheckStatus.FAIL,
                    f"no class covers n = {uncovered} (mod {span})",
                )
            )
    else:
        items.append(
            VerificationItem("coverage", CheckStatus.FAIL, "certificate covers nothing")
        )

    checked = {e.n: e for e in cert.exceptional_n}
    for w in cert.sieve_classes:
        name = f"witness[{w.cls.r} mod {w.cls.modulus}]"
        if w.form is ValueForm.FACTORED and not square_part:
            items.append(
                VerificationItem(
                    name, CheckStatus.FAIL, "FACTORED form needs a square (a-1)(b-1)"
                )
            )
            continue
        squares = {r * r % w.modulus for r in range(w.modulus // 2 + 1)}
        hit = sorted(set(w.values) & squares)
        if hit:
            items.append(
                VerificationItem(
                    name,
                    CheckStatus.FAIL,
                    f"listed value {hit[0]} is a square residue mod {w.modulus}",
                )
            )
            continue
        found = _class_values_by_enumeration(
            a, b, w.form, w.modulus, w.cls, w.preperiod_bound
        )
        if found is None:
            items.append(
                VerificationItem(name, CheckStatus.FAIL, "modulus too large to verify")
            )
        elif found != set(w.values):
            items.append(
                VerificationItem(
                    name,
                    CheckStatus.FAIL,
                    f"recomputed values {sorted(found)} != listed {sorted(w.values)}",
                )
            )
        else:
            items.append(VerificationItem(name, CheckStatus.PASS))
        # small members of the class hide below the pre-period bound and must
        # be vetted one by one
        missing = [
            n
            for n in range(1, w.preperiod_bound + 1)
            if w.cls.contains(n) and n not in checked
        ]
        if missing:
            items.append(
                VerificationItem(
                    f"{name}.explicit",
                    CheckStatus.FAIL,
                    f"exponent {missing[0]} below the bound lacks an explicit check",
                )
            )

    missing_residual = sorted(n for n in residual_pool if n not in checked)
    if missing_residual:
        items.append(
            VerificationItem(
                "exceptional_coverage",
                CheckStatus.FAIL,
                f"gate residual n = {missing_residual[0]} lacks an explicit check",
            )
        )
    else:
        items.append(VerificationItem("exceptional_coverage", CheckStatus.PASS))

    known = dict(cert.known_solutions)
    for e in cert.exceptional_n:
        name = f"exceptional[{e.n}]"
        outcome = _recheck_exponent(a, b, e.n)
        if outcome is None:
            items.append(
                VerificationItem(name, CheckStatus.FAIL, "exponent too large to recheck")
            )
            continue
        is_solution, x = outcome
        if is_solution != e.is_solution:
            items.append(
                VerificationItem(
                    name,
                    CheckStatus.FAIL,
                    f"verdict is {e.is_solution} but recomputation says {is_solution}",
                )
            )
        elif is_solution and e.x != x:
            items.append(
                VerificationItem(name, CheckStatus.FAIL, f"root should be {x}, not {e.x}")
            )
        elif is_solution and known.get(e.n) != x:
            items.append(
                VerificationItem(
                    name, CheckStatus.FAIL, "solution missing from known_solutions"
                )
            )
        else:
            items.append(VerificationItem(name, CheckStatus.PASS))

    problem = ""
    ns = [n for n, _ in cert.known_solutions]
    if ns != sorted(set(ns)):
        problem = "not strictly increasing in n"
    for n, x in cert.known_solutions:
        if problem:
            break
        if n in checked:
            if not (checked[n].is_solution and checked[n].x == x):
                problem = f"listed solution n = {n} contradicts its explicit check"
        else:
            outcome = _recheck_exponent(a, b, n)
            if outcome is None:
                problem = f"listed solution n = {n} too large to recheck"
            elif outcome != (True, x):
                problem = f"listed solution n = {n} does not check out"
    if problem:
        items.append(VerificationItem("known_solutions", CheckStatus.FAIL, problem))
    else:
        items.append(VerificationItem("known_solutions", CheckStatus.PASS))

    return VerificationReport(tuple(items))
