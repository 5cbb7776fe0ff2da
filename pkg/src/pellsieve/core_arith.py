"""Exact integer primitives shared by every other module.

Everything here works on arbitrary-precision ints and never touches floats,
so results stay exact no matter how large the operands get.
"""

from __future__ import annotations

from math import gcd, lcm

__all__ = [
    "nu2",
    "isqrt",
    "is_perfect_square",
    "jacobi",
    "mod_pow",
    "multiplicative_order",
    "geometric_sum_mod",
    "square_residues_mod",
]


def nu2(m: int) -> int:
    """2-adic valuation of m (largest e with 2**e | m).  Undefined at 0."""
    if m == 0:
        raise ValueError("nu2 is undefined at 0")
    return (m & -m).bit_length() - 1


def isqrt(m: int) -> int:
    """Floor square root by Newton iteration on ints."""
    if m < 0:
        raise ValueError("isqrt of a negative number")
    if m == 0:
        return 0
    # start from a power of two >= sqrt(m); the iteration then decreases
    # monotonically to the floor root
    x = 1 << ((m.bit_length() + 1) // 2)
    while True:
        y = (x + m // x) // 2
        if y >= x:
            return x
        x = y


# squares hit few residues modulo smooth numbers; reject most non-squares
# before paying for a full isqrt
_SQ_FILTERS = tuple(
    (mod, frozenset(x * x % mod for x in range(mod))) for mod in (64, 63, 65, 11)
)


def is_perfect_square(m: int) -> int | None:
    """Return the square root if m is a perfect square, else None."""
    if m < 0:
        return None
    for mod, squares in _SQ_FILTERS:
        if m % mod not in squares:
            return None
    r = isqrt(m)
    return r if r * r == m else None


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by the binary algorithm."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi requires odd n >= 1")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_pow(a: int, e: int, m: int) -> int:
    """a**e mod m for e >= 0, m >= 2."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if e < 0:
        raise ValueError("exponent must be >= 0")
    return pow(a, e, m)


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; meant for small n."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _carmichael(factors: dict[int, int]) -> int:
    parts = []
    for p, k in factors.items():
        if p == 2:
            parts.append(1 if k == 1 else 2 if k == 2 else 1 << (k - 2))
        else:
            parts.append(p ** (k - 1) * (p - 1))
    return lcm(*parts) if parts else 1

ORDER_FACTOR_BOUND = 10**6


def multiplicative_order(a: int, m: int) -> int | None:
    """Order of a modulo m, or None when gcd(a, m) > 1.

    Moduli up to ORDER_FACTOR_BOUND are handled by factoring the Carmichael
    exponent; larger ones fall back to sequential multiplication, which is
    slower but never silently wrong.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a %= m
    if gcd(a, m) != 1:
        return None
    if m <= ORDER_FACTOR_BOUND:
        t = _carmichael(_factorize(m))
        for p in _factorize(t):
            while t % p == 0 and pow(a, t // p, m) == 1:
                t //= p
        return t
    acc, t = a, 1
    while acc != 1:
        acc = acc * a % m
        t += 1
    return t


def geometric_sum_mod(a: int, n: int, m: int) -> int:
    """(1 + a + ... + a**(n-1)) mod m without dividing by a - 1.

    Uses the doubling rules S(2k) = S(k) * (1 + a**k) and
    S(2k+1) = a * S(2k) + 1, so it stays valid when gcd(a - 1, m) > 1.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("term count must be >= 0")
    s, p = 0, 1  # running S(k) and a**k for the prefix k of n
    for bit in bin(n)[2:] if n else "":
        s = s * (1 + p) % m
        p = p * p % m
        if bit == "1":
            s = (s * a + 1) % m
            p = p * a % m
    return s


def square_residues_mod(m: int) -> frozenset[int]:
    """All residues of perfect squares modulo m."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return frozenset(x * x % m for x in range(m // 2 + 1))
