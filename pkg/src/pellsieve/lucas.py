"""Lucas sequence pairs U_n, V_n for the recurrence X_{n+1} = P X_n + Q X_{n-1}.

Seeds are U_0 = 0, U_1 = 1 and V_0 = 2, V_1 = P.  With alpha, beta the roots
of x^2 - P x - Q we have U_n = (alpha^n - beta^n)/(alpha - beta) and
V_n = alpha^n + beta^n, where alpha * beta = -Q and alpha + beta = P.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

__all__ = ["LucasParams", "LucasPair", "lucas_uv", "lucas_uv_mod", "lucas_iter"]


@dataclass(frozen=True)
class LucasParams:
    """Recurrence coefficients (P, Q), restricted to the real-quadratic case."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 or self.q == 0:
            raise ValueError("P and Q must be nonzero")
        if gcd(self.p, self.q) != 1:
            raise ValueError("P and Q must be coprime")
        if self.p * self.p + 4 * self.q <= 0:
            raise ValueError("discriminant P^2 + 4Q must be positive")

    @property
    def discriminant(self) -> int:
        return self.p * self.p + 4 * self.q


@dataclass(frozen=True)
class LucasPair:
    """Values (U_n, V_n) at one index."""

    n: int
    u: int
    v: int

    def check(self, params: LucasParams) -> bool:
        """V_n^2 - D U_n^2 = 4 (-Q)^n, the norm form of alpha^n."""
        d = params.discriminant
        return self.v * self.v - d * self.u * self.u == 4 * (-params.q) ** self.n


def lucas_uv(params: LucasParams, n: int) -> LucasPair:
    """Exact (U_n, V_n) by fast doubling in O(log n) big-int multiplies."""
    if n < 0:
        raise ValueError("index must be >= 0")
    p, d, e = params.p, params.discriminant, -params.q
    u, v, w = 0, 2, 1  # U_k, V_k, (alpha*beta)^k = (-Q)^k, k = prefix of n
    for bit in bin(n)[2:] if n else "":
        u, v, w = u * v, v * v - 2 * w, w * w
        if bit == "1":
            # 2 U_{k+1} = P U_k + V_k and 2 V_{k+1} = D U_k + P V_k; both
            # right-hand sides are even, so the floor divisions are exact
            u, v, w = (p * u + v) // 2, (d * u + p * v) // 2, w * e
    return LucasPair(n, u, v)


def lucas_uv_mod(params: LucasParams, n: int, m: int) -> tuple[int, int]:
    """(U_n mod m, V_n mod m), division-free so even moduli are fine.

    Tracks the pair (U_k, U_{k+1}) through the doubling identities
    U_{2k} = U_k (2 U_{k+1} - P U_k) and U_{2k+1} = U_{k+1}^2 + Q U_k^2,
    then recovers V_n = 2 U_{n+1} - P U_n.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if m < 1:
        raise ValueError("modulus must be >= 1")
    p, q = params.p, params.q
    a, b = 0, 1  # U_k, U_{k+1}
    for bit in bin(n)[2:] if n else "":
        dbl = a * (2 * b - p * a) % m
        dbl1 = (b * b + q * a * a) % m
        if bit == "1":
            a, b = dbl1, (p * dbl1 + q * dbl) % m
        else:
            a, b = dbl, dbl1
    return a % m, (2 * b - p * a) % m


def lucas_iter(params: LucasParams, n_max: int) -> Iterator[LucasPair]:
    """Stream LucasPair(0) .. LucasPair(n_max) by the plain recurrence."""
    if n_max < 0:
        raise ValueError("index must be >= 0")
    p, q = params.p, params.q
    u_prev, u = 0, 1
    v_prev, v = 2, p
    yield LucasPair(0, 0, 2)
    for n in range(1, n_max + 1):
        yield LucasPair(n, u, v)
        u_prev, u = u, p * u + q * u_prev
        v_prev, v = v, p * v + q * v_prev
