"""Covering-congruence prover for (a^n - 1)(b^n - 1) = x^2.

Structural gates dispose of even exponents where a theorem applies; the
remaining residue classes of n are eliminated one by one with quadratic
residue witnesses: a modulus m such that the target value over the whole
class (beyond a fixed pre-period) never lands on a square residue.  Classes
that resist are split into finer classes and retried.  Everything that
survives below the explicit bound is tested exactly, so true solutions
surface naturally instead of being special-cased.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from .certificate import (
    Certificate,
    CertificateStatus,
    ExceptionalCheck,
    GateKind,
    GateStep,
    ResidueClass,
    ValueForm,
    Witness,
)
from .core_arith import geometric_sum_mod, is_perfect_square, mod_pow, nu2, square_residues_mod

__all__ = [
    "Pair",
    "SieveConfig",
    "DEFAULT_CONFIG",
    "gate_even",
    "structural_gates",
    "target_value",
    "find_witness",
    "sieve",
]


@dataclass(frozen=True)
class Pair:
    """Fixed bases 1 < a < b, with the square part of (a-1)(b-1) precomputed."""

    a: int
    b: int
    g: int = field(init=False)
    square_part_ok: bool = field(init=False)
    s: int | None = field(init=False)

    def __post_init__(self):
        if not 1 < self.a < self.b:
            raise ValueError("pair requires 1 < a < b")
        object.__setattr__(self, "g", gcd(self.a, self.b))
        root = is_perfect_square((self.a - 1) * (self.b - 1))
        object.__setattr__(self, "square_part_ok", root is not None)
        object.__setattr__(self, "s", root)


def _odd_primes_upto(limit: int) -> tuple[int, ...]:
    sieve_arr = bytearray([1]) * (limit + 1)
    sieve_arr[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if sieve_arr[p]:
            sieve_arr[p * p :: p] = bytearray(len(sieve_arr[p * p :: p]))
    return tuple(p for p in range(3, limit + 1) if sieve_arr[p])


DEFAULT_POOL: tuple[int, ...] = (8, 16) + _odd_primes_upto(1000)

# applied in order starting from modulus 1; products run 2, 4, 8, 24, 48,
# 240, 480, 1440, 10080 = max_class_modulus
DEFAULT_SPLIT_SEQUENCE: tuple[int, ...] = (2, 2, 2, 3, 2, 5, 2, 3, 7)


@dataclass(frozen=True)
class SieveConfig:
    moduli_pool: tuple[int, ...] = DEFAULT_POOL
    split_sequence: tuple[int, ...] = DEFAULT_SPLIT_SEQUENCE
    max_class_modulus: int = 10080
    explicit_bound: int = 50
    use_structural_gates: bool = False

    def __post_init__(self):
        if not self.moduli_pool:
            raise ValueError("moduli pool must not be empty")
        for m in self.moduli_pool:
            if m < 3:
                raise ValueError("witness moduli must be >= 3")
        for q in self.split_sequence:
            if q < 2:
                raise ValueError("split factors must be >= 2")
        if self.explicit_bound < 1:
            raise ValueError("explicit bound must be >= 1")
        # the bound must clear every possible pre-period, which stays below
        # ceil(log2 m) + 1 for any modulus in the pool
        worst = max((m - 1).bit_length() + 1 for m in self.moduli_pool)
        if self.explicit_bound < worst:
            raise ValueError(f"explicit bound must be >= {worst} for this pool")

    def split_moduli(self) -> tuple[int, ...]:
        out, m = [], 1
        for q in self.split_sequence:
            m *= q
            if m > self.max_class_modulus:
                break
            out.append(m)
        return tuple(out)


DEFAULT_CONFIG = SieveConfig()


def gate_even(pair: Pair) -> list[GateStep]:
    """Every applicable even-exponent theorem, in a fixed order."""
    a, b, g = pair.a, pair.b, pair.g
    steps = []
    if g == 1:
        steps.append(
            GateStep(
                GateKind.COPRIME_SINGLY_EVEN,
                (ResidueClass(4, 2),),
                (2,),
                f"gcd({a}, {b}) = 1",
            )
        )
    if g > 1 and nu2(a) != nu2(b):
        steps.append(
            GateStep(
                GateKind.MIXED_TWO_ADIC_COMMON_FACTOR,
                (ResidueClass(2, 0),),
                (),
                f"gcd({a}, {b}) = {g} > 1; nu2({a}) = {nu2(a)} != nu2({b}) = {nu2(b)}",
            )
        )
    if g > 1 and b % a != 0 and a % b != 0 and (g * g > a or g * g > b):
        side = a if g * g > a else b
        steps.append(
            GateStep(
                GateKind.COMMON_FACTOR_SQUARE_EXCESS,
                (ResidueClass(2, 0),),
                (),
                f"gcd({a}, {b}) = {g} > 1; neither base divides the other; {g}^2 = {g * g} > {side}",
            )
        )
    if b % a == 0 and a > b // a:
        steps.append(
            GateStep(
                GateKind.NESTED_DIVISOR,
                (ResidueClass(2, 0),),
                (),
                f"{a} divides {b} and {a} > {b} / {a} = {b // a}",
            )
        )
    if a % 2 == 1 and b % 2 == 1 and g > 1 and (a // g % 4 == 3 or b // g % 4 == 3):
        side = a if a // g % 4 == 3 else b
        steps.append(
            GateStep(
                GateKind.ODD_COFACTOR_MOD_FOUR,
                (ResidueClass(4, 2),),
                (),
                f"{a} and {b} odd; gcd = {g} > 1; {side} / {g} = {side // g} = 3 (mod 4)",
            )
        )
    steps.append(
        GateStep(
            GateKind.QUARTIC_EXPONENT,
            (ResidueClass(4, 0),),
            (4,),
            "unconditional",
        )
    )
    return steps


def structural_gates(pair: Pair) -> list[GateStep]:
    """Whole-line results for special pair shapes; opt-in via SieveConfig."""
    steps = []
    if (pair.a, pair.b) == (2, 50):
        steps.append(
            GateStep(
                GateKind.BASES_2_50,
                (ResidueClass(1, 0),),
                (1,),
                "(a, b) = (2, 50)",
            )
        )
    if pair.b % pair.a == 0:
        c = is_perfect_square(pair.b // pair.a)
        if c is not None and c >= 2 and c % 2 == 0:
            steps.append(
                GateStep(
                    GateKind.EVEN_SQUARE_MULTIPLE,
                    (ResidueClass(1, 0),),
                    (),
                    f"{pair.b} = {pair.a} * {c}^2 with {c} even",
                )
            )
    return steps


_ASSUMPTION_TEXT = {
    GateKind.COPRIME_SINGLY_EVEN: (
        "coprime bases: a solution exponent n = 2 (mod 4) forces n = 2"
    ),
    GateKind.MIXED_TWO_ADIC_COMMON_FACTOR: (
        "mixed 2-adic valuations with a common factor exclude every even exponent"
    ),
    GateKind.QUARTIC_EXPONENT: (
        "a solution with 4 | n forces n = 4, which the explicit checks retest"
    ),
    GateKind.COMMON_FACTOR_SQUARE_EXCESS: (
        "a common factor g with g^2 > a or g^2 > b, neither base dividing the other, "
        "excludes every even exponent"
    ),
    GateKind.NESTED_DIVISOR: "a | b with a > b/a excludes every even exponent",
    GateKind.ODD_COFACTOR_MOD_FOUR: (
        "odd bases whose cofactor a/g or b/g is 3 (mod 4) exclude n = 2 (mod 4)"
    ),
    GateKind.BASES_2_50: (
        "Pell/Lucas descent for the pair (2, 50): n = 1 is the only solution"
    ),
    GateKind.EVEN_SQUARE_MULTIPLE: (
        "b = a c^2 with c even admits no solution at any exponent"
    ),
}


def target_value(pair: Pair, form: ValueForm, n: int, m: int) -> int:
    """The quantity that must be a square residue if n were a solution."""
    if m < 3:
        raise ValueError("modulus must be >= 3")
    if n < 0:
        raise ValueError("exponent must be >= 0")
    if form is ValueForm.RAW:
        return (mod_pow(pair.a, n, m) - 1) * (mod_pow(pair.b, n, m) - 1) % m
    if not pair.square_part_ok:
        raise ValueError("FACTORED form requires (a-1)(b-1) to be a perfect square")
    return geometric_sum_mod(pair.a, n, m) * geometric_sum_mod(pair.b, n, m) % m


class _Profile:
    """Eventually periodic table of n -> target(n) mod m for one form."""

    __slots__ = ("pre", "period", "values", "useful")

    def __init__(self, a: int, b: int, form: ValueForm, m: int, squares: frozenset[int]):
        if form is ValueForm.RAW:
            state = (1 % m, 1 % m)
        else:
            state = (1 % m, 0, 1 % m, 0)
        seen: dict[tuple, int] = {}
        values: list[int] = []
        while state not in seen:
            seen[state] = len(values)
            if form is ValueForm.RAW:
                pa, pb = state
                values.append((pa - 1) * (pb - 1) % m)
                state = (pa * a % m, pb * b % m)
            else:
                pa, sa, pb, sb = state
                values.append(sa * sb % m)
                state = (pa * a % m, (sa + pa) % m, pb * b % m, (sb + pb) % m)
        self.pre = seen[state]
        self.period = len(values) - self.pre
        self.values = values
        # a modulus whose eventual values are all square residues can never
        # witness anything; skip it wholesale
        self.useful = any(v not in squares for v in values[self.pre :])

    def value_at(self, n: int) -> int:
        if n < len(self.values):
            return self.values[n]
        return self.values[self.pre + (n - self.pre) % self.period]


class _WitnessSearch:
    """Shared caches for witness searches over one pair."""

    def __init__(self, pair: Pair, moduli_pool: tuple[int, ...]):
        self.pair = pair
        self.pool = tuple(moduli_pool)
        self.squares: dict[int, frozenset[int]] = {}
        self.profiles: dict[tuple[int, ValueForm], _Profile] = {}
        self.outcomes: dict[tuple, frozenset[int] | None] = {}
        self.forms: dict[int, tuple[ValueForm, ...]] = {}

    def squares_mod(self, m: int) -> frozenset[int]:
        got = self.squares.get(m)
        if got is None:
            got = self.squares[m] = square_residues_mod(m)
        return got

    def form_order(self, m: int) -> tuple[ValueForm, ...]:
        got = self.forms.get(m)
        if got is None:
            if not self.pair.square_part_ok:
                got = (ValueForm.RAW,)
            elif gcd(m, self.pair.a * self.pair.b) > 1:
                # sharing a factor with a base makes the geometric sums
                # strictly sharper than the raw product
                got = (ValueForm.FACTORED, ValueForm.RAW)
            else:
                got = (ValueForm.RAW, ValueForm.FACTORED)
            self.forms[m] = got
        return got

    def profile(self, m: int, form: ValueForm) -> _Profile:
        key = (m, form)
        got = self.profiles.get(key)
        if got is None:
            got = self.profiles[key] = _Profile(
                self.pair.a, self.pair.b, form, m, self.squares_mod(m)
            )
        return got

    def class_outcome(
        self, m: int, form: ValueForm, cls: ResidueClass, bound: int
    ) -> frozenset[int] | None:
        """Value set over {n in cls, n > bound}, or None if it meets a square."""
        prof = self.profile(m, form)
        if not prof.useful:
            return None
        n0 = bound + 1 + (cls.r - bound - 1) % cls.modulus
        pre, period = prof.pre, prof.period
        if n0 >= pre:
            # the orbit is determined by the start and stride mod the period
            key = (m, form, (n0 - pre) % period, cls.modulus % period)
            if key in self.outcomes:
                return self.outcomes[key]
            head = 0
        else:
            key = None
            head = -((n0 - pre) // cls.modulus)  # steps until inside the cycle
        squares = self.squares_mod(m)
        count = head + period // gcd(period, cls.modulus)
        out: set[int] = set()
        result: frozenset[int] | None
        n = n0
        for _ in range(count):
            v = prof.value_at(n)
            if v in squares:
                result = None
                break
            out.add(v)
            n += cls.modulus
        else:
            result = frozenset(out)
        if key is not None:
            self.outcomes[key] = result
        return result

    def find(self, cls: ResidueClass, bound: int) -> Witness | None:
        for m in self.pool:
            for form in self.form_order(m):
                outcome = self.class_outcome(m, form, cls, bound)
                if outcome:
                    return Witness(cls, m, form, bound, tuple(sorted(outcome)))
        return None


def find_witness(
    pair: Pair,
    cls: ResidueClass,
    moduli_pool: tuple[int, ...] = DEFAULT_POOL,
    preperiod_bound: int = DEFAULT_CONFIG.explicit_bound,
) -> Witness | None:
    """First modulus in pool order that eliminates the class, if any."""
    return _WitnessSearch(pair, tuple(moduli_pool)).find(cls, preperiod_bound)


def _covered(cls: ResidueClass, gates: list[GateStep]) -> bool:
    return any(
        g.modulus <= cls.modulus
        and cls.modulus % g.modulus == 0
        and cls.r % g.modulus == g.r
        for step in gates
        for g in step.classes_eliminated
    )


def _overlaps(cls: ResidueClass, gates: list[GateStep]) -> bool:
    return any(
        (cls.r - g.r) % gcd(cls.modulus, g.modulus) == 0
        for step in gates
        for g in step.classes_eliminated
    )


def _live_roots(gates: list[GateStep], ladder: tuple[int, ...]) -> list[ResidueClass]:
    """Classes not covered by any gate, split as coarsely as possible."""
    roots: list[ResidueClass] = []
    queue = deque([ResidueClass(1, 0)])
    while queue:
        cls = queue.popleft()
        if _covered(cls, gates):
            continue
        if not _overlaps(cls, gates):
            roots.append(cls)
            continue
        nxt = next((m for m in ladder if m > cls.modulus), None)
        if nxt is None or nxt % cls.modulus != 0:
            roots.append(cls)  # cannot refine against the gates; sieve as is
            continue
        q = nxt // cls.modulus
        for k in range(q):
            queue.append(ResidueClass(nxt, cls.r + k * cls.modulus))
    return roots


def sieve(pair: Pair, config: SieveConfig = DEFAULT_CONFIG) -> Certificate:
    """Assemble a certificate for the pair under the given configuration."""
    gates = gate_even(pair)
    if config.use_structural_gates:
        gates.extend(structural_gates(pair))

    bound = config.explicit_bound
    exceptional = []
    known = []
    for n in range(1, bound + 1):
        t = (pair.a**n - 1) * (pair.b**n - 1)
        x = is_perfect_square(t)
        if x is None:
            exceptional.append(ExceptionalCheck(n, False))
        else:
            exceptional.append(ExceptionalCheck(n, True, x))
            known.append((n, x))

    ladder = config.split_moduli()
    search = _WitnessSearch(pair, config.moduli_pool)
    witnesses: list[Witness] = []
    surviving: list[ResidueClass] = []
    queue = deque(sorted(_live_roots(gates, ladder)))
    while queue:
        cls = queue.popleft()
        w = search.find(cls, bound)
        if w is not None:
            witnesses.append(w)
            continue
        nxt = next((m for m in ladder if m > cls.modulus and m % cls.modulus == 0), None)
        if nxt is None:
            surviving.append(cls)
            continue
        q = nxt // cls.modulus
        for k in range(q):
            queue.append(ResidueClass(nxt, cls.r + k * cls.modulus))

    witnesses.sort(key=lambda w: (w.cls.modulus, w.cls.r))
    surviving.sort()
    status = CertificateStatus.COMPLETE if not surviving else CertificateStatus.PARTIAL
    scope = "" if not surviving else " outside the surviving classes"
    claim = (
        f"every n >= 1{scope} for which ({pair.a}^n - 1)({pair.b}^n - 1) "
        f"is a perfect square appears in known_solutions"
    )
    assumptions = []
    for step in gates:
        text = _ASSUMPTION_TEXT[step.kind]
        if text not in assumptions:
            assumptions.append(text)
    return Certificate(
        a=pair.a,
        b=pair.b,
        claim=claim,
        known_solutions=tuple(known),
        gate_steps=tuple(gates),
        sieve_classes=tuple(witnesses),
        exceptional_n=tuple(exceptional),
        assumptions=tuple(assumptions),
        surviving_classes=tuple(surviving),
        status=status,
    )
