"""Correctness laboratory for textbook RSA and the IREA variant."""

from .schemes import KeyPair, PrivateKeyRecord, PublicKeyRecord, SchemeId, decrypt, encrypt, keygen

__version__ = "0.1.0"

__all__ = [
    "KeyPair",
    "PrivateKeyRecord",
    "PublicKeyRecord",
    "SchemeId",
    "decrypt",
    "encrypt",
    "keygen",
]
