import math
import random

import pytest

from pellsieve.core_arith import nu2
from pellsieve.lucas import LucasParams, LucasPair, lucas_iter, lucas_uv, lucas_uv_mod


def random_params(rng, q_minus_one=False):
    while True:
        p = rng.randrange(-40, 41)
        q = -1 if q_minus_one else rng.randrange(-40, 41)
        try:
            return LucasParams(p, q)
        except ValueError:
            continue


class TestLucasParams:
    def test_rejects_zero_coefficients(self):
        with pytest.raises(ValueError):
            LucasParams(0, 1)
        with pytest.raises(ValueError):
            LucasParams(3, 0)

    def test_rejects_common_factor(self):
        with pytest.raises(ValueError):
            LucasParams(6, 9)

    def test_rejects_nonpositive_discriminant(self):
        with pytest.raises(ValueError):
            LucasParams(1, -1)  # 1 - 4 < 0
        with pytest.raises(ValueError):
            LucasParams(2, -1)  # 4 - 4 = 0

    def test_discriminant(self):
        assert LucasParams(4, -1).discriminant == 12
        assert LucasParams(1, 1).discriminant == 5


class TestLucasUv:
    def test_seeds(self):
        for p in (3, 4, 30, -5):
            got = lucas_uv(LucasParams(p, -1), 0)
            assert (got.u, got.v) == (0, 2)

    def test_index_one(self):
        pair = lucas_uv(LucasParams(7, 2), 1)
        assert (pair.u, pair.v) == (1, 7)

    def test_u3_closed_form(self):
        # U_3(P, -1) = P^2 - 1
        for p in (3, 4, 5, 30, 126, -7):
            assert lucas_uv(LucasParams(p, -1), 3).u == p * p - 1

    def test_example_30(self):
        pair = lucas_uv(LucasParams(30, -1), 2)
        assert (pair.u, pair.v) == (30, 898)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            lucas_uv(LucasParams(3, -1), -1)

    def test_matches_stream(self):
        rng = random.Random(2026)
        for _ in range(20):
            params = random_params(rng)
            for pair in lucas_iter(params, 300):
                assert lucas_uv(params, pair.n) == pair

    def test_norm_invariant(self):
        rng = random.Random(5)
        for _ in range(50):
            params = random_params(rng)
            n = rng.randrange(0, 400)
            assert lucas_uv(params, n).check(params)

    def test_invariant_rejects_wrong_pair(self):
        params = LucasParams(4, -1)
        good = lucas_uv(params, 7)
        assert not LucasPair(7, good.u + 1, good.v).check(params)


class TestLucasUvMod:
    def test_index_zero(self):
        assert lucas_uv_mod(LucasParams(9, -2), 0, 7) == (0, 2)
        assert lucas_uv_mod(LucasParams(9, -2), 0, 2) == (0, 0)

    def test_matches_exact_small(self):
        rng = random.Random(99)
        for _ in range(25):
            params = random_params(rng)
            m = rng.randrange(2, 50)
            for pair in lucas_iter(params, 120):
                assert lucas_uv_mod(params, pair.n, m) == (pair.u % m, pair.v % m)

    def test_even_moduli(self):
        # the doubling path must not divide by 2
        params = LucasParams(13, -1)
        for m in (2, 4, 8, 16):
            for pair in lucas_iter(params, 80):
                assert lucas_uv_mod(params, pair.n, m) == (pair.u % m, pair.v % m)

    def test_large_index_against_exact(self):
        params = LucasParams(4, -1)
        exact = lucas_uv(params, 10**6)
        assert lucas_uv_mod(params, 10**6, 5) == (exact.u % 5, exact.v % 5)
        for pair in lucas_iter(params, 1000):
            assert lucas_uv_mod(params, pair.n, 5) == (pair.u % 5, pair.v % 5)


def u_table(params, n_max):
    return [pair.u for pair in lucas_iter(params, n_max)]


def v_table(params, n_max):
    return [pair.v for pair in lucas_iter(params, n_max)]


class TestIdentities:
    """Divisibility and gcd structure used throughout the prover."""

    def test_u_gcd(self):
        # gcd(U_m, U_n) = U_gcd(m,n)
        rng = random.Random(41)
        for _ in range(15):
            params = random_params(rng)
            u = u_table(params, 120)
            for _ in range(30):
                m, n = rng.randrange(1, 120), rng.randrange(1, 120)
                assert math.gcd(u[m], u[n]) == abs(u[math.gcd(m, n)])

    def test_v_gcd(self):
        # gcd(V_m, V_n) is V_d when m/d, n/d are both odd, else 1 or 2
        rng = random.Random(43)
        for _ in range(15):
            params = random_params(rng)
            v = v_table(params, 120)
            for _ in range(30):
                m, n = rng.randrange(1, 120), rng.randrange(1, 120)
                d = math.gcd(m, n)
                g = math.gcd(v[m], v[n])
                if (m // d) % 2 == 1 and (n // d) % 2 == 1:
                    assert g == abs(v[d])
                else:
                    assert g in (1, 2)

    def test_even_p_parities(self):
        # P even: V_n always even, U_n even iff n even
        rng = random.Random(47)
        for _ in range(10):
            while True:
                params = random_params(rng)
                if params.p % 2 == 0:
                    break
            for pair in lucas_iter(params, 100):
                assert pair.v % 2 == 0
                assert (pair.u % 2 == 0) == (pair.n % 2 == 0)

    def test_p_divides_v_iff_odd_index(self):
        # needs |P| >= 3: for |P| <= 2, P | V_n can hold at even n too
        rng = random.Random(53)
        for _ in range(10):
            while True:
                params = random_params(rng)
                if abs(params.p) >= 3:
                    break
            for pair in lucas_iter(params, 100):
                if pair.n >= 1:
                    assert (pair.v % params.p == 0) == (pair.n % 2 == 1)

    def test_v_doubling_and_tripling_q_minus_one(self):
        # Q = -1: V_2n = V_n^2 - 2 and V_3n = V_n (V_n^2 - 3)
        rng = random.Random(59)
        for _ in range(10):
            params = random_params(rng, q_minus_one=True)
            v = v_table(params, 150)
            for n in range(0, 50):
                assert v[2 * n] == v[n] ** 2 - 2
                assert v[3 * n] == v[n] * (v[n] ** 2 - 3)

    def test_v_from_u_neighbors_q_minus_one(self):
        # Q = -1: V_n = U_{n+1} - U_{n-1}
        rng = random.Random(61)
        for _ in range(10):
            params = random_params(rng, q_minus_one=True)
            u = u_table(params, 101)
            v = v_table(params, 101)
            for n in range(1, 100):
                assert v[n] == u[n + 1] - u[n - 1]

    def test_index_congruences_q_minus_one(self):
        # U_{2mn+r} = U_r and V_{2mn+r} = V_r modulo U_m, for Q = -1
        rng = random.Random(67)
        for _ in range(10):
            params = random_params(rng, q_minus_one=True)
            for _ in range(20):
                m = rng.randrange(2, 20)
                n = rng.randrange(0, 8)
                r = rng.randrange(0, 2 * m)
                mod = abs(lucas_uv(params, m).u)
                if mod < 2:
                    continue
                ur, vr = lucas_uv_mod(params, r, mod)
                assert lucas_uv_mod(params, 2 * m * n + r, mod) == (ur, vr)

    def test_five_divides_v_q_minus_one(self):
        # 5 | V_n(P, -1) iff 5 | P and n odd
        for p in (3, 4, 5, 7, 10, 15, 30, -5, -35):
            params = LucasParams(p, -1)
            for pair in lucas_iter(params, 60):
                expected = p % 5 == 0 and pair.n % 2 == 1
                assert (pair.v % 5 == 0) == expected

    def test_two_adic_valuation_of_v(self):
        # P even, Q = -1: nu2(V_n) = nu2(P) for odd n, and 1 for even n
        for p in (4, 6, 8, 12, 30, 126, -10):
            params = LucasParams(p, -1)
            for pair in lucas_iter(params, 60):
                if pair.n % 2 == 1:
                    assert nu2(pair.v) == nu2(p)
                else:
                    assert nu2(pair.v) == 1
