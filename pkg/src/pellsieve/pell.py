"""Pell equations x^2 - d y^2 = 1 and the hyperbolic form a x^2 - b y^2 = 1.

Fundamental solutions come from the continued fraction of sqrt(d); the full
solution families are generated through Lucas sequences with Q = -1 and
re-verified on emission, so a bug upstream cannot silently leak bad pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator

from .core_arith import is_perfect_square, isqrt

__all__ = [
    "PellFundamental",
    "MinimalHypSolution",
    "pell_fundamental",
    "pell_solutions",
    "iter_pell_solutions",
    "minimal_hyp_solution",
    "hyp_solutions",
    "iter_hyp_solutions",
]


@dataclass(frozen=True)
class PellFundamental:
    """Least positive solution of x^2 - d y^2 = 1."""

    d: int
    x1: int
    y1: int


@dataclass(frozen=True)
class MinimalHypSolution:
    """Least positive solution of a u^2 - b v^2 = 1, with the Lucas seed P."""

    a: int
    b: int
    u1: int
    v1: int
    p: int  # 4 a u1^2 - 2; always 2 mod 4

    def __post_init__(self):
        if self.p != 4 * self.a * self.u1 * self.u1 - 2:
            raise ValueError("P must equal 4*a*u1^2 - 2")


def pell_fundamental(d: int) -> PellFundamental:
    """Fundamental solution via the continued fraction expansion of sqrt(d).

    The expansion is periodic; the convergent just before the period closes
    solves x^2 - d y^2 = (-1)^len, and squaring fixes a -1 norm.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if is_perfect_square(d) is not None:
        raise ValueError("d must not be a perfect square")
    a0 = isqrt(d)
    # state P_k, Q_k of the surd (P + sqrt(d))/Q, plus trailing convergents
    pk, qk, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        pk = a * qk - pk
        qk = (d - pk * pk) // qk
        a = (a0 + pk) // qk
        if qk == 1 and a == 2 * a0:
            break
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    x, y = h, k
    if x * x - d * y * y == -1:
        x, y = x * x + d * y * y, 2 * x * y
    if x * x - d * y * y != 1:
        raise ArithmeticError(f"continued fraction of sqrt({d}) closed badly")
    return PellFundamental(d, x, y)


def iter_pell_solutions(fund: PellFundamental) -> Iterator[tuple[int, int]]:
    """All positive solutions, ascending: x_n = V_n(2 x1, -1)/2, y_n = y1 U_n."""
    p = 2 * fund.x1
    u_prev, u = 0, 1
    v_prev, v = 2, p
    while True:
        x, y = v // 2, fund.y1 * u
        if x * x - fund.d * y * y != 1:
            raise ArithmeticError("generated pair fails the Pell equation")
        yield x, y
        u_prev, u = u, p * u - u_prev
        v_prev, v = v, p * v - v_prev


def pell_solutions(fund: PellFundamental, count: int) -> list[tuple[int, int]]:
    """First `count` positive solutions of x^2 - d y^2 = 1."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(islice(iter_pell_solutions(fund), count))


def minimal_hyp_solution(a: int, b: int) -> MinimalHypSolution | None:
    """Least (u, v) with a u^2 - b v^2 = 1, or None when no solution exists.

    Any solution embeds into the d = a*b Pell group by squaring, which caps
    the scan: the minimal u satisfies 4 a u^2 - 2 <= 2 x1 + 2 where (x1, y1)
    is fundamental for d = a*b.  An empty scan below the cap is a proof of
    unsolvability.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if is_perfect_square(a) is not None:
        raise ValueError("a must not be a perfect square")
    if b < 1:
        raise ValueError("b must be >= 1")
    if is_perfect_square(a * b) is not None:
        # x^2 - (ab) y^2 = 1 has no y > 0 then, so neither does the form
        return None
    fund = pell_fundamental(a * b)
    cap = 2 * fund.x1 + 2
    u = 1
    while 4 * a * u * u - 2 <= cap:
        t = a * u * u - 1
        if t % b == 0:
            v = is_perfect_square(t // b)
            if v is not None:
                return MinimalHypSolution(a, b, u, v, 4 * a * u * u - 2)
        u += 1
    return None


def iter_hyp_solutions(sol: MinimalHypSolution) -> Iterator[tuple[int, int]]:
    """All positive solutions, ascending, from the minimal one.

    With P = 4 a u1^2 - 2 and U the Lucas U-sequence of (P, -1), solution n
    is x = u1 (U_{n+1} - U_n), y = v1 (U_{n+1} + U_n).
    """
    p = sol.p
    u_prev, u = 0, 1  # U_n, U_{n+1}
    while True:
        x = sol.u1 * (u - u_prev)
        y = sol.v1 * (u + u_prev)
        if sol.a * x * x - sol.b * y * y != 1:
            raise ArithmeticError("generated pair fails the hyperbolic form")
        yield x, y
        u_prev, u = u, p * u - u_prev


def hyp_solutions(sol: MinimalHypSolution, count: int) -> list[tuple[int, int]]:
    """First `count` positive solutions of a x^2 - b y^2 = 1."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(islice(iter_hyp_solutions(sol), count))
