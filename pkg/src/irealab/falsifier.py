"""Round-trip oracle, failure prediction, and the counterexample search.

Failure is always judged over the full message space [0, j), including
messages that share a factor with j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _engine, modmath
from .errors import MessageOutOfRange, ModulusTooLargeForExhaustion
from .schemes import (
    KeyPair,
    SchemeId,
    admissible_exponents,
    decrypt,
    encrypt,
    private_exponent,
)

DEFAULT_EXHAUSTION_BOUND = 10**6

E_POLICIES = {
    SchemeId.TEXTBOOK: "1 < e < phi(j); gcd(e, phi(j)) = 1",
    SchemeId.IREA_PUBLISHED: "b < e < phi(j); gcd(e, phi(j)) = gcd(e, j) = 1",
    SchemeId.IREA_CORRECTED: "b < e < phi(j); gcd(e, phi(j)) = gcd(e, j) = 1",
}


@dataclass(frozen=True)
class RoundTripRecord:
    M: int
    E: int
    D: int

    @property
    def ok(self) -> bool:
        return self.D == self.M


@dataclass(frozen=True)
class KeypairVerdict:
    keypair: KeyPair
    failures: tuple[RoundTripRecord, ...]
    total_messages: int

    @property
    def universally_correct(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class EulerWitness:
    """A message M and the integer k in M**(k*phi(j) + 1)."""

    M: int
    k: int
    b: int
    v: int


@dataclass(frozen=True)
class BreakingExponent:
    e: int
    d: int
    witness_M: int


@dataclass(frozen=True)
class SurveyRow:
    b: int
    v: int
    e: int
    scheme: SchemeId
    j: int
    failure_count: int


@dataclass(frozen=True)
class SurveyReport:
    rows: tuple[SurveyRow, ...]
    prime_range: tuple[int, int]
    e_policy: str

    def failing_rows(self) -> list[SurveyRow]:
        return [r for r in self.rows if r.failure_count]


@dataclass(frozen=True)
class OracleAgreement:
    """Outcome of cross-checking both predictors against exhaustion for one prime pair."""

    keys: int
    messages: int
    failing_keys: int
    message_disagreements: int
    predicate_disagreements: int


def _check_bound(j: int, bound: int) -> None:
    if j > bound:
        raise ModulusTooLargeForExhaustion(
            f"modulus {j} exceeds the exhaustion bound {bound}"
        )


def round_trip(kp: KeyPair, M: int) -> RoundTripRecord:
    if not 0 <= M < kp.j:
        raise MessageOutOfRange(f"message {M} outside [0, {kp.j})")
    E = encrypt(kp.public(), M)
    return RoundTripRecord(M, E, decrypt(kp.private(), E))


def exhaustive_verdict(kp: KeyPair, bound: int = DEFAULT_EXHAUSTION_BOUND) -> KeypairVerdict:
    """Round-trip every M in [0, j) one at a time."""
    _check_bound(kp.j, bound)
    pub, priv = kp.public(), kp.private()
    failures = []
    for M in range(kp.j):
        E = encrypt(pub, M)
        D = decrypt(priv, E)
        if D != M:
            failures.append(RoundTripRecord(M, E, D))
    return KeypairVerdict(kp, tuple(failures), kp.j)


def predict_round_trip(kp: KeyPair, M: int) -> bool:
    """Decide whether M survives a round trip without exponentiating M.

    Modulo each prime q of j, M comes back iff q divides M or the product of
    the two exponents is 1 modulo the order of M mod q. By CRT the round trip
    succeeds iff it succeeds modulo both primes.
    """
    if not 0 <= M < kp.j:
        raise MessageOutOfRange(f"message {M} outside [0, {kp.j})")
    ed = kp.encryption_exponent * kp.d
    for q in (kp.b, kp.v):
        r = M % q
        if r and (ed - 1) % modmath.multiplicative_order(r, q):
            return False
    return True


def universally_correct_predicate(kp: KeyPair) -> bool:
    """True iff e*d == 1 modulo the Carmichael function of j."""
    lam = modmath.carmichael_semiprime(kp.b, kp.v)
    return (kp.encryption_exponent * kp.d - 1) % lam == 0


def _keys(scheme: SchemeId, b: int, v: int) -> tuple[list[int], list[int]]:
    j, phi = b * v, (b - 1) * (v - 1)
    es = admissible_exponents(scheme, b, v)
    return es, [private_exponent(scheme, e, j, phi) for e in es]


def find_breaking_exponents(
    b: int, v: int, bound: int = DEFAULT_EXHAUSTION_BOUND
) -> list[BreakingExponent]:
    """Admissible e for which published IREA loses at least one message.

    Each entry carries the smallest failing message as its witness.
    """
    modmath.euler_phi_semiprime(b, v)
    _check_bound(b * v, bound)
    es, ds = _keys(SchemeId.IREA_PUBLISHED, b, v)
    res = _engine.scan(b, v, es, ds)
    return [
        BreakingExponent(e, d, int(ff))
        for e, d, nf, ff in zip(es, ds, res.fails, res.first_fail)
        if nf
    ]


def euler_identity_check(w: EulerWitness) -> bool:
    """M**(k*phi(j) + 1) == M modulo b, modulo v, and modulo j = b*v."""
    phi = modmath.euler_phi_semiprime(w.b, w.v)
    x = w.k * phi + 1
    return all(
        modmath.mod_pow(w.M % n, x, n) == w.M % n
        for n in (w.b, w.v, w.b * w.v)
    )


def survey(
    prime_lo: int,
    prime_hi: int,
    scheme: SchemeId,
    bound: int = DEFAULT_EXHAUSTION_BOUND,
) -> SurveyReport:
    """Failure count for every ordered prime pair in range and every admissible e.

    Rows are sorted by (b, v, e). Keys are evaluated once per unordered pair:
    (b, v) and (v, b) share j and d, and the admissible e for the larger first
    prime are a subset of those for the smaller one.
    """
    scheme = SchemeId(scheme)
    primes = modmath.primes_in_range(prime_lo, prime_hi)
    if len(primes) >= 2:
        _check_bound(primes[-1] * primes[-2], bound)
    rows = []
    for i, lo in enumerate(primes):
        for hi in primes[i + 1 :]:
            j = lo * hi
            es, ds = _keys(scheme, lo, hi)
            fails = _engine.scan(lo, hi, es, ds).fails
            for e, nf in zip(es, fails):
                rows.append(SurveyRow(lo, hi, e, scheme, j, int(nf)))
                if not scheme.is_irea or e > hi:
                    rows.append(SurveyRow(hi, lo, e, scheme, j, int(nf)))
    rows.sort(key=lambda r: (r.b, r.v, r.e))
    return SurveyReport(tuple(rows), (prime_lo, prime_hi), E_POLICIES[scheme])


def oracle_agreement(b: int, v: int) -> OracleAgreement:
    """Cross-check both predictors against exhaustion for every keypair on {b, v}.

    Covers all three schemes and both orderings of the primes. Keys that
    coincide across schemes (textbook and corrected IREA share (e, d)) are
    checked once.
    """
    lo, hi = sorted((b, v))
    keys = set()
    for scheme in SchemeId:
        keys.update(zip(*_keys(scheme, lo, hi)))
    if not keys:
        return OracleAgreement(0, 0, 0, 0, 0)
    es, ds = (np.array(c, dtype=np.int64) for c in zip(*sorted(keys)))
    res = _engine.scan(lo, hi, es, ds)
    exhaustive_ok = res.fails == 0
    predicate_ok = _engine.carmichael_ok(lo, hi, es, ds)
    return OracleAgreement(
        keys=len(es),
        messages=len(es) * lo * hi,
        failing_keys=int((~exhaustive_ok).sum()),
        message_disagreements=int(res.disagree.sum()),
        predicate_disagreements=int((exhaustive_ok != predicate_ok).sum()),
    )

