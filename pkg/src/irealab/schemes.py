"""Textbook RSA, the published IREA variant, and the corrected IREA variant.

All three share the same encryption map M -> M**e mod j. They differ only in
how the private exponent d is derived:

* ``TEXTBOOK`` and ``IREA_CORRECTED``: d = e**-1 mod phi(j)
* ``IREA_PUBLISHED``: d = e**-1 mod j

The IREA schemes publish p = 2e + 1 instead of e and a = j - 1 instead of j.
Encryption and decryption always reduce modulo a + 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import modmath
from .errors import (
    CipherOutOfRange,
    ExponentNotCoprime,
    ExponentOutOfRange,
    MalformedPublicKey,
    MessageOutOfRange,
    NotPrime,
    PrimesEqual,
)

__all__ = [
    "SchemeId",
    "KeyPair",
    "PublicKeyRecord",
    "PrivateKeyRecord",
    "keygen",
    "encrypt",
    "decrypt",
    "derive_base_exponent",
    "validate_keypair",
    "admissible_exponents",
    "private_exponent",
]


class SchemeId(str, enum.Enum):
    TEXTBOOK = "textbook"
    IREA_PUBLISHED = "irea-published"
    IREA_CORRECTED = "irea-corrected"

    @property
    def is_irea(self) -> bool:
        return self is not SchemeId.TEXTBOOK

    @classmethod
    def parse(cls, text: str) -> "SchemeId":
        try:
            return cls(text)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {text!r} (expected one of {choices})") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PublicKeyRecord:
    """What gets published: ``exponent_field`` is e (textbook) or p = 2e+1 (IREA)."""

    scheme: SchemeId
    exponent_field: int
    a: int

    @property
    def modulus(self) -> int:
        return self.a + 1


@dataclass(frozen=True)
class PrivateKeyRecord:
    scheme: SchemeId
    d: int
    a: int

    @property
    def modulus(self) -> int:
        return self.a + 1


@dataclass(frozen=True)
class KeyPair:
    scheme: SchemeId
    b: int
    v: int
    j: int
    phi: int
    a: int
    e: int
    p: int
    d: int

    @property
    def encryption_exponent(self) -> int:
        """The exponent actually applied to M during encryption."""
        if self.scheme.is_irea:
            return (self.p - 1) // 2
        return self.e

    def public(self) -> PublicKeyRecord:
        exp = self.p if self.scheme.is_irea else self.e
        return PublicKeyRecord(self.scheme, exp, self.a)

    def private(self) -> PrivateKeyRecord:
        return PrivateKeyRecord(self.scheme, self.d, self.a)


def admissible_exponents(scheme: SchemeId, b: int, v: int) -> list[int]:
    """Every e that ``keygen`` accepts for (scheme, b, v), ascending.

    For the IREA schemes this is b < e < phi(j) with e coprime to both phi(j)
    and j. Textbook RSA only needs gcd(e, phi(j)) = 1; the enumeration is
    bounded to 1 < e < phi(j).
    """
    phi = modmath.euler_phi_semiprime(b, v)
    j = b * v
    if scheme.is_irea:
        return [
            e for e in range(b + 1, phi)
            if math.gcd(e, phi) == 1 and math.gcd(e, j) == 1
        ]
    return [e for e in range(2, phi) if math.gcd(e, phi) == 1]


def private_exponent(scheme: SchemeId, e: int, j: int, phi: int) -> int:
    """d for exponent e: inverse modulo j (published IREA) or modulo phi."""
    modulus = j if scheme is SchemeId.IREA_PUBLISHED else phi
    return modmath.mod_inv(e, modulus)


def keygen(scheme: SchemeId, b: int, v: int, e: int) -> KeyPair:
    """Build the full key material for one scheme instance.

    The range check b < e < phi(j) uses b exactly as given, not min(b, v).
    """
    scheme = SchemeId(scheme)
    if not modmath.is_probable_prime(b):
        raise NotPrime("b", b)
    if not modmath.is_probable_prime(v):
        raise NotPrime("v", v)
    if b == v:
        raise PrimesEqual(f"b and v must be distinct primes, both are {b}")
    j = b * v
    phi = (b - 1) * (v - 1)
    # Coprimality is checked before the range, so e=5 with b=5, v=11 reports
    # the shared factor rather than the range.
    g = math.gcd(e, phi)
    if g != 1:
        raise ExponentNotCoprime(e, "phi(j)", phi, g)
    if scheme.is_irea:
        g = math.gcd(e, j)
        if g != 1:
            raise ExponentNotCoprime(e, "j", j, g)
        if not b < e < phi:
            raise ExponentOutOfRange(f"e={e} must satisfy b < e < phi(j), i.e. {b} < e < {phi}")
    d = private_exponent(scheme, e, j, phi)
    p = 2 * e + 1 if scheme.is_irea else 0
    return KeyPair(scheme=scheme, b=b, v=v, j=j, phi=phi, a=j - 1, e=e, p=p, d=d)


def derive_base_exponent(pub: PublicKeyRecord) -> int:
    """Recover e from a public key. For IREA this is just (p - 1) / 2."""
    if not pub.scheme.is_irea:
        return pub.exponent_field
    p = pub.exponent_field
    if p < 3 or p % 2 == 0:
        raise MalformedPublicKey(f"IREA public value must be odd and >= 3, got {p}")
    return (p - 1) // 2


def encrypt(pub: PublicKeyRecord, M: int) -> int:
    n = pub.modulus
    if not 0 <= M < n:
        raise MessageOutOfRange(f"message {M} outside [0, {n})")
    return modmath.mod_pow(M, derive_base_exponent(pub), n)


def decrypt(priv: PrivateKeyRecord, E: int) -> int:
    """E**d mod (a + 1). Says nothing about whether this recovers M."""
    n = priv.modulus
    if not 0 <= E < n:
        raise CipherOutOfRange(f"ciphertext {E} outside [0, {n})")
    return modmath.mod_pow(E, priv.d, n)


def validate_keypair(kp: KeyPair) -> list[str]:
    """Return one descriptor per violated KeyPair invariant; empty means valid."""
    problems = []
    if not modmath.is_probable_prime(kp.b):
        problems.append("b is not prime")
    if not modmath.is_probable_prime(kp.v):
        problems.append("v is not prime")
    if kp.b == kp.v:
        problems.append("b == v")
    if kp.j != kp.b * kp.v:
        problems.append("j != b*v")
    if kp.phi != (kp.b - 1) * (kp.v - 1):
        problems.append("phi != (b-1)*(v-1)")
    if kp.a != kp.j - 1:
        problems.append("a != j-1")
    if kp.scheme.is_irea:
        if kp.p != 2 * kp.e + 1:
            problems.append("p != 2*e+1")
    elif kp.p != 0:
        problems.append("p != 0 for textbook")
    if kp.scheme is SchemeId.IREA_PUBLISHED:
        if kp.j < 1 or (kp.d * kp.e) % kp.j != 1:
            problems.append("d*e mod j != 1")
    elif kp.phi < 1 or (kp.d * kp.e) % kp.phi != 1:
        problems.append("d*e mod phi != 1")
    if not 1 <= kp.d < kp.a + 1:
        problems.append("d outside [1, a+1)")
    return problems
