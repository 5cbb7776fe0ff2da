import math
from math import gcd

import pytest

from pellsieve.certificate import (
    CertificateStatus,
    GateKind,
    ResidueClass,
    ValueForm,
    certificate_to_json,
)
from pellsieve.prover import (
    DEFAULT_CONFIG,
    Pair,
    SieveConfig,
    find_witness,
    gate_even,
    sieve,
    structural_gates,
    target_value,
)

REPLAY_PAIRS = [(2, 50), (4, 49), (12, 45), (13, 76), (20, 77), (28, 49), (45, 100)]


def brute_square(t: int) -> bool:
    r = math.isqrt(t)
    return r * r == t


def exact_target(a: int, b: int, form: ValueForm, n: int, m: int) -> int:
    if form is ValueForm.RAW:
        return (a**n - 1) * (b**n - 1) % m
    sa = sum(a**i for i in range(n))
    sb = sum(b**i for i in range(n))
    return sa * sb % m


class TestPair:
    def test_square_part(self):
        assert Pair(13, 76).s == 30
        assert Pair(4, 49).s == 12
        assert Pair(2, 50).s == 7
        assert Pair(12, 45).s == 22
        p = Pair(2, 3)
        assert not p.square_part_ok and p.s is None

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            Pair(5, 5)
        with pytest.raises(ValueError):
            Pair(1, 7)


class TestTargetValue:
    def test_factored_golden(self):
        assert target_value(Pair(13, 76), ValueForm.FACTORED, 5, 8) == 1

    def test_raw_golden(self):
        assert target_value(Pair(13, 76), ValueForm.RAW, 5, 17) == 11

    def test_zero_exponent(self):
        assert target_value(Pair(13, 76), ValueForm.RAW, 0, 11) == 0
        assert target_value(Pair(13, 76), ValueForm.FACTORED, 0, 11) == 0

    def test_factored_requires_square_part(self):
        with pytest.raises(ValueError):
            target_value(Pair(2, 3), ValueForm.FACTORED, 3, 7)

    def test_rejects_tiny_modulus(self):
        with pytest.raises(ValueError):
            target_value(Pair(2, 5), ValueForm.RAW, 3, 2)

    def test_matches_exact_arithmetic(self):
        import random

        rng = random.Random(7)
        for _ in range(60):
            a = rng.randrange(2, 60)
            b = rng.randrange(a + 1, 120)
            n = rng.randrange(0, 40)
            m = rng.randrange(3, 300)
            pair = Pair(a, b)
            assert target_value(pair, ValueForm.RAW, n, m) == exact_target(
                a, b, ValueForm.RAW, n, m
            )
            if pair.square_part_ok:
                assert target_value(pair, ValueForm.FACTORED, n, m) == exact_target(
                    a, b, ValueForm.FACTORED, n, m
                )


class TestGateEven:
    def kinds(self, a, b):
        return [s.kind for s in gate_even(Pair(a, b))]

    def test_coprime_pair(self):
        steps = gate_even(Pair(13, 76))
        assert [s.kind for s in steps] == [
            GateKind.COPRIME_SINGLY_EVEN,
            GateKind.QUARTIC_EXPONENT,
        ]
        assert steps[0].classes_eliminated == (ResidueClass(4, 2),)
        assert steps[0].residual_explicit_n == (2,)
        assert steps[1].classes_eliminated == (ResidueClass(4, 0),)
        assert steps[1].residual_explicit_n == (4,)

    def test_mixed_two_adic(self):
        assert self.kinds(12, 45) == [
            GateKind.MIXED_TWO_ADIC_COMMON_FACTOR,
            GateKind.QUARTIC_EXPONENT,
        ]

    def test_square_excess(self):
        assert self.kinds(28, 49) == [
            GateKind.MIXED_TWO_ADIC_COMMON_FACTOR,
            GateKind.COMMON_FACTOR_SQUARE_EXCESS,
            GateKind.QUARTIC_EXPONENT,
        ]

    def test_nested_divisor(self):
        kinds = self.kinds(7, 21)
        assert GateKind.NESTED_DIVISOR in kinds
        assert GateKind.ODD_COFACTOR_MOD_FOUR in kinds

    def test_odd_cofactor(self):
        assert self.kinds(21, 33) == [
            GateKind.ODD_COFACTOR_MOD_FOUR,
            GateKind.QUARTIC_EXPONENT,
        ]

    def test_bases_2_50_gets_only_the_unconditional_gate(self):
        assert self.kinds(2, 50) == [GateKind.QUARTIC_EXPONENT]

    @pytest.mark.parametrize(
        "a,b", REPLAY_PAIRS + [(3, 17), (13, 339), (7, 21), (21, 33), (5, 11)]
    )
    def test_gates_consistent_with_brute_force(self, a, b):
        # no square target inside an eliminated class for n <= 20 unless the
        # exponent is listed as a residual explicit check
        for step in gate_even(Pair(a, b)):
            residual = set(step.residual_explicit_n)
            for n in range(1, 21):
                if n in residual:
                    continue
                if any(cls.contains(n) for cls in step.classes_eliminated):
                    assert not brute_square((a**n - 1) * (b**n - 1)), (a, b, n, step.kind)


class TestStructuralGates:
    def test_two_fifty(self):
        steps = structural_gates(Pair(2, 50))
        assert [s.kind for s in steps] == [GateKind.BASES_2_50]
        assert steps[0].residual_explicit_n == (1,)

    def test_even_square_multiple(self):
        steps = structural_gates(Pair(2, 8))
        assert [s.kind for s in steps] == [GateKind.EVEN_SQUARE_MULTIPLE]
        assert steps[0].residual_explicit_n == ()

    def test_odd_square_multiple_is_not_covered(self):
        assert structural_gates(Pair(3, 27)) == []
        assert structural_gates(Pair(5, 7)) == []


class TestFindWitness:
    def test_known_witnesses_for_13_76(self):
        pair = Pair(13, 76)
        w = find_witness(pair, ResidueClass(4, 3))
        assert (w.modulus, w.form, w.values) == (8, ValueForm.FACTORED, (3, 7))
        w = find_witness(pair, ResidueClass(8, 1))
        assert (w.modulus, w.form, w.values) == (8, ValueForm.FACTORED, (5,))
        w = find_witness(pair, ResidueClass(8, 5))
        assert (w.modulus, w.form, w.values) == (17, ValueForm.RAW, (11,))

    def test_witness_for_4_49(self):
        w = find_witness(Pair(4, 49), ResidueClass(8, 5))
        assert (w.modulus, w.form, w.values) == (17, ValueForm.RAW, (3,))

    def test_unwitnessable_class_returns_none(self):
        # n = 1 mod anything keeps hitting the square value of (2,50) at n=1
        assert find_witness(Pair(2, 50), ResidueClass(4, 1)) is None

    def test_witness_values_complete_over_two_periods(self):
        # every value the class can reach past the bound must be listed; a
        # single incremental sweep far past any cycle length mod m <= 17
        pair = Pair(13, 76)
        for cls in [ResidueClass(4, 3), ResidueClass(8, 1), ResidueClass(8, 5)]:
            w = find_witness(pair, cls)
            m = w.modulus
            pa = pb = 1 % m
            sa = sb = 0
            seen = set()
            for n in range(20000):
                value = (pa - 1) * (pb - 1) % m if w.form is ValueForm.RAW else sa * sb % m
                if n > w.preperiod_bound and cls.contains(n):
                    seen.add(value)
                sa, sb = (sa + pa) % m, (sb + pb) % m
                pa, pb = pa * pair.a % m, pb * pair.b % m
            assert seen == set(w.values)


class TestSieveConfig:
    def test_default_ladder(self):
        assert DEFAULT_CONFIG.split_moduli() == (2, 4, 8, 24, 48, 240, 480, 1440, 10080)

    def test_bound_must_cover_preperiods(self):
        with pytest.raises(ValueError):
            SieveConfig(explicit_bound=5)

    def test_pool_must_hold_usable_moduli(self):
        with pytest.raises(ValueError):
            SieveConfig(moduli_pool=())
        with pytest.raises(ValueError):
            SieveConfig(moduli_pool=(2, 8))


class TestSieve:
    def test_complete_status_and_solutions(self):
        cert = sieve(Pair(13, 76))
        assert cert.status is CertificateStatus.COMPLETE
        assert cert.known_solutions == ((1, 30),)
        assert cert.surviving_classes == ()

    def test_partial_for_2_50(self):
        cert = sieve(Pair(2, 50))
        assert cert.status is CertificateStatus.PARTIAL
        assert cert.known_solutions == ((1, 7),)
        assert cert.surviving_classes == (ResidueClass(10080, 1),)

    def test_structural_gate_completes_2_50(self):
        config = SieveConfig(use_structural_gates=True)
        cert = sieve(Pair(2, 50), config)
        assert cert.status is CertificateStatus.COMPLETE
        assert cert.known_solutions == ((1, 7),)
        assert cert.sieve_classes == ()

    def test_deterministic_bytes(self):
        for a, b in [(13, 76), (2, 50)]:
            one = certificate_to_json(sieve(Pair(a, b)))
            two = certificate_to_json(sieve(Pair(a, b)))
            assert one == two

    @pytest.mark.parametrize("a,b", REPLAY_PAIRS)
    def test_soundness_scan(self, a, b):
        cert = sieve(Pair(a, b))
        hits = {n for n in range(1, 41) if brute_square((a**n - 1) * (b**n - 1))}
        assert hits == {n for n, _ in cert.known_solutions if n <= 40}
        for n, x in cert.known_solutions:
            assert x * x == (a**n - 1) * (b**n - 1)

    @pytest.mark.parametrize("a,b", REPLAY_PAIRS)
    def test_classes_partition_all_exponents(self, a, b):
        cert = sieve(Pair(a, b))
        moduli = [w.cls.modulus for w in cert.sieve_classes]
        moduli += [s.modulus for s in cert.surviving_classes]
        moduli += [
            g.modulus for step in cert.gate_steps for g in step.classes_eliminated
        ]
        big = math.lcm(*moduli)
        for n in range(big):
            covered = any(
                g.contains(n) for step in cert.gate_steps for g in step.classes_eliminated
            )
            covered = covered or any(w.cls.contains(n) for w in cert.sieve_classes)
            covered = covered or any(s.contains(n) for s in cert.surviving_classes)
            assert covered, (a, b, n)

    def test_witness_classes_sorted(self):
        cert = sieve(Pair(45, 100))
        keys = [(w.cls.modulus, w.cls.r) for w in cert.sieve_classes]
        assert keys == sorted(keys)

    def test_exceptional_covers_explicit_bound(self):
        cert = sieve(Pair(12, 45))
        assert [e.n for e in cert.exceptional_n] == list(range(1, 51))
        for e in cert.exceptional_n:
            assert e.is_solution == brute_square((12**e.n - 1) * (45**e.n - 1))
