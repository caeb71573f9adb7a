"""Deliberately naive reference implementations used as test oracles.

None of these share code with the library.
"""


def gcd_by_subtraction(x, y):
    if x == 0:
        return y
    if y == 0:
        return x
    while x != y:
        if x > y:
            x -= y
        else:
            y -= x
    return x


def pow_by_loop(base, exp, m):
    result = 1 % m
    for _ in range(exp):
        result = result * base % m
    return result


def is_prime_trial(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_trial(lo, hi):
    return [n for n in range(lo, hi + 1) if is_prime_trial(n)]


def phi_by_count(m):
    return sum(1 for a in range(1, m + 1) if gcd_by_subtraction(a, m) == 1)


def inverse_by_search(x, m):
    for u in range(1, m):
        if u * x % m == 1:
            return u
    return None


def order_by_search(x, m):
    y = x % m
    for t in range(1, m + 1):
        if y == 1:
            return t
        y = y * x % m
    return None


def round_trip_by_loop(e, d, j, M):
    return pow_by_loop(pow_by_loop(M, e, j), d, j)
