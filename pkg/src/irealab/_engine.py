"""Compiled bulk exhaustion over the full message space of one modulus.

For a modulus j = b*v and a batch of keys (e, d), ``scan`` computes, for every
key and every M in [0, j):

* the literal round trip D = (M**e mod j)**d mod j, by table lookup;
* the order-based prediction of whether D == M;

and returns per-key failure counts, smallest failing message, and the number
of messages where prediction and round trip disagree.

The power table holds rows T[t][M] = M**t mod j, built one multiplication at
a time. Building stops early once some row t >= 2 equals row 1 elementwise;
from then on T[t + s] == T[1 + s] for every s (each row is the previous one
times M), so exponents reduce exactly onto the stored rows. No group theory
is assumed on this side; the predictor is the only place orders appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

# Cap on stored table entries (rows * j); above this, fall back to direct powering.
TABLE_ENTRY_LIMIT = 120_000_000


@numba.njit(cache=True)
def _build_table(j, max_rows, table):
    """Fill table rows until a repeat of row 1 or max_rows. Returns (rows, period)."""
    for m in range(j):
        table[0, m] = 1 % j
        table[1, m] = m
    if max_rows <= 2:
        return 2, -1
    for t in range(2, max_rows):
        same = True
        for m in range(j):
            x = (np.int64(table[t - 1, m]) * m) % j
            table[t, m] = x
            if same and x != m:
                same = False
        if same:
            return t, t - 1
    return max_rows, -1


@numba.njit(cache=True)
def _row(x, rows, period):
    if x < rows:
        return x
    return 1 + (x - 1) % period


@numba.njit(cache=True)
def _powmod(base, exp, m):
    result = 1 % m
    base %= m
    while exp > 0:
        if exp & 1:
            result = (result * base) % m
        base = (base * base) % m
        exp >>= 1
    return result


@numba.njit(cache=True)
def _good_residues(edm1, q, order):
    good = np.empty(q, dtype=np.bool_)
    good[0] = True
    for r in range(1, q):
        good[r] = edm1 % order[r] == 0
    return good


@numba.njit(cache=True)
def _scan_table(table, rows, period, j, b, v, ord_b, ord_v, es, ds,
                fails, first_fail, disagree):
    for k in range(es.shape[0]):
        e = es[k]
        d = ds[k]
        re = _row(e, rows, period)
        rd = _row(d, rows, period)
        good_b = _good_residues(e * d - 1, b, ord_b)
        good_v = _good_residues(e * d - 1, v, ord_v)
        nf = 0
        nd = 0
        ff = -1
        rb = 0
        rv = 0
        for m in range(j):
            E = table[re, m]
            D = table[rd, E]
            ok = D == m
            if not ok:
                nf += 1
                if ff < 0:
                    ff = m
            if ok != (good_b[rb] and good_v[rv]):
                nd += 1
            rb += 1
            if rb == b:
                rb = 0
            rv += 1
            if rv == v:
                rv = 0
        fails[k] = nf
        first_fail[k] = ff
        disagree[k] = nd


@numba.njit(cache=True)
def _scan_direct(j, b, v, ord_b, ord_v, es, ds, fails, first_fail, disagree):
    for k in range(es.shape[0]):
        e = es[k]
        d = ds[k]
        good_b = _good_residues(e * d - 1, b, ord_b)
        good_v = _good_residues(e * d - 1, v, ord_v)
        nf = 0
        nd = 0
        ff = -1
        for m in range(j):
            D = _powmod(_powmod(np.int64(m), e, j), d, j)
            ok = D == m
            if not ok:
                nf += 1
                if ff < 0:
                    ff = m
            if ok != (good_b[m % b] and good_v[m % v]):
                nd += 1
        fails[k] = nf
        first_fail[k] = ff
        disagree[k] = nd


@numba.njit(cache=True)
def _unit_orders(q):
    """order[r] = multiplicative order of r modulo the prime q, r in [1, q).

    Finds a generator g by brute force, then ord(g**i) = (q-1)/gcd(i, q-1).
    """
    order = np.zeros(q, dtype=np.int64)
    if q == 2:
        order[1] = 1
        return order
    n = q - 1
    for g in range(2, q):
        x = g
        t = 1
        while x != 1:
            x = (x * g) % q
            t += 1
        if t == n:
            break
    x = 1
    for i in range(n):
        a, c = i, n
        while c:
            a, c = c, a % c
        order[x] = n // a
        x = (x * g) % q
    return order


_order_cache: dict[int, np.ndarray] = {}


def unit_orders(q: int) -> np.ndarray:
    """Multiplicative orders of every unit modulo the prime q (index 0 unused)."""
    orders = _order_cache.get(q)
    if orders is None:
        orders = _unit_orders(q)
        _order_cache[q] = orders
    return orders


@dataclass(frozen=True)
class ScanResult:
    fails: np.ndarray
    first_fail: np.ndarray
    disagree: np.ndarray


def scan(b: int, v: int, es, ds, table_limit: int = TABLE_ENTRY_LIMIT) -> ScanResult:
    """Exhaust every message modulo b*v for each key (es[k], ds[k])."""
    j = b * v
    if j >= 1 << 31:
        raise ValueError(f"modulus {j} too large for the compiled engine")
    es = np.ascontiguousarray(es, dtype=np.int64)
    ds = np.ascontiguousarray(ds, dtype=np.int64)
    n = es.shape[0]
    fails = np.zeros(n, dtype=np.int64)
    first_fail = np.full(n, -1, dtype=np.int64)
    disagree = np.zeros(n, dtype=np.int64)
    if n == 0:
        return ScanResult(fails, first_fail, disagree)
    ord_b, ord_v = unit_orders(b), unit_orders(v)

    need = int(max(es.max(), ds.max())) + 1
    max_rows = max(2, min(need, table_limit // j))
    dtype = np.uint16 if j <= 1 << 16 else np.uint32
    table = np.empty((max_rows, j), dtype=dtype)
    rows, period = _build_table(j, max_rows, table)
    if period > 0 or rows >= need:
        _scan_table(table, rows, max(period, 1), j, b, v, ord_b, ord_v,
                    es, ds, fails, first_fail, disagree)
    else:
        del table
        _scan_direct(j, b, v, ord_b, ord_v, es, ds, fails, first_fail, disagree)
    return ScanResult(fails, first_fail, disagree)


def carmichael_ok(b: int, v: int, es, ds) -> np.ndarray:
    """Vector form of the universal-correctness predicate e*d == 1 mod lcm(b-1, v-1)."""
    lam = math.lcm(b - 1, v - 1)
    es = np.asarray(es, dtype=np.int64)
    ds = np.asarray(ds, dtype=np.int64)
    return (es * ds - 1) % lam == 0
