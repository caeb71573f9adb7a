"""Exact integer number theory used by the schemes and the falsifier.

Everything here works on Python ints, so there is no width limit and no
overflow in modular products.
"""

from __future__ import annotations

import math
import random

from .errors import NoInverse, NotCoprime, NotPrime, PrimesEqual

__all__ = [
    "gcd",
    "egcd",
    "mod_inv",
    "mod_pow",
    "is_probable_prime",
    "primes_in_range",
    "euler_phi_semiprime",
    "carmichael_semiprime",
    "multiplicative_order",
]

# Witness set {2, ..., 37} is deterministic below the first strong pseudoprime
# to all of those bases (about 3.2e23), which covers every 64-bit n.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 318665857834031151167461
# 4**-40 = 2**-80
_MR_EXTRA_ROUNDS = 40


def _natural(name: str, x: int) -> None:
    if x < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {x}")


def gcd(x: int, y: int) -> int:
    """Greatest common divisor, with gcd(0, 0) == 0."""
    _natural("x", x)
    _natural("y", y)
    return math.gcd(x, y)


def egcd(x: int, y: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, s, t) with s*x + t*y == g == gcd(x, y)."""
    _natural("x", x)
    _natural("y", y)
    r0, r1 = x, y
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def mod_inv(x: int, m: int) -> int:
    """Inverse of x modulo m as the representative in [1, m).

    Raises NoInverse when gcd(x, m) != 1.
    """
    _natural("x", x)
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    g, s, _ = egcd(x % m, m)
    if g != 1:
        raise NoInverse(f"{x} has no inverse modulo {m} (gcd = {g})")
    return s % m


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m; 0**0 is taken as 1 mod m."""
    _natural("base", base)
    _natural("exp", exp)
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    return pow(base, exp, m)


def _strong_probable_prime(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin test.

    Exact below 3.2e23 (so for every 64-bit n). Above that, 40 extra rounds
    with bases drawn from an RNG seeded by n keep the answer reproducible and
    the error probability under 2**-80.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, d, s, a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(
        _strong_probable_prime(n, d, s, rng.randrange(2, n - 1))
        for _ in range(_MR_EXTRA_ROUNDS)
    )


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    _natural("lo", lo)
    if lo > hi:
        raise ValueError(f"empty interval: lo={lo} > hi={hi}")
    if hi < 2:
        return []
    lo = max(lo, 2)
    if hi > 10**7 and hi - lo < 10**5:
        return [n for n in range(lo, hi + 1) if is_probable_prime(n)]
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(hi) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, hi + 1, p)))
    return [n for n in range(lo, hi + 1) if sieve[n]]


def _check_distinct_primes(b: int, v: int) -> None:
    if not is_probable_prime(b):
        raise NotPrime("b", b)
    if not is_probable_prime(v):
        raise NotPrime("v", v)
    if b == v:
        raise PrimesEqual(f"b and v must be distinct primes, both are {b}")


def euler_phi_semiprime(b: int, v: int) -> int:
    """Totient of b*v for distinct primes b, v."""
    _check_distinct_primes(b, v)
    return (b - 1) * (v - 1)


def carmichael_semiprime(b: int, v: int) -> int:
    """Carmichael function of b*v for distinct primes b, v: lcm(b-1, v-1)."""
    _check_distinct_primes(b, v)
    return math.lcm(b - 1, v - 1)


def multiplicative_order(x: int, m: int) -> int:
    """Smallest t >= 1 with x**t == 1 (mod m), found by iteration.

    Raises NotCoprime when x is not a unit modulo m.
    """
    _natural("x", x)
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    x %= m
    if math.gcd(x, m) != 1:
        raise NotCoprime(f"{x} is not a unit modulo {m}")
    t, y = 1, x
    while y != 1:
        y = y * x % m
        t += 1
    return t
