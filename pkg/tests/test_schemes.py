import dataclasses
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irealab import schemes
from irealab.errors import (
    CipherOutOfRange,
    ExponentNotCoprime,
    ExponentOutOfRange,
    MalformedPublicKey,
    MessageOutOfRange,
    NotPrime,
    PrimesEqual,
)
from irealab.schemes import PrivateKeyRecord, PublicKeyRecord, SchemeId, keygen

import oracles

S = SchemeId
SMALL_PRIMES = oracles.primes_trial(2, 97)


@st.composite
def keypairs(draw, scheme_choices=tuple(SchemeId), max_prime=97):
    primes = [p for p in SMALL_PRIMES if p <= max_prime]
    scheme = draw(st.sampled_from(scheme_choices))
    b = draw(st.sampled_from(primes))
    v = draw(st.sampled_from([p for p in primes if p != b]))
    es = schemes.admissible_exponents(scheme, b, v)
    if not es:
        b, v = min(b, v), max(b, v)
        es = schemes.admissible_exponents(scheme, b, v)
    if not es:
        b, v = 5, 11
        es = schemes.admissible_exponents(scheme, b, v)
    return keygen(scheme, b, v, draw(st.sampled_from(es)))


class TestSchemeId:
    def test_serialized_forms(self):
        assert [s.value for s in SchemeId] == ["textbook", "irea-published", "irea-corrected"]
        assert SchemeId.parse("irea-corrected") is S.IREA_CORRECTED
        with pytest.raises(ValueError, match="expected one of"):
            SchemeId.parse("irea")


class TestKeygen:
    def test_table1(self):
        kp = keygen(S.IREA_PUBLISHED, 5, 11, 13)
        assert (kp.j, kp.phi, kp.a, kp.p, kp.d) == (55, 40, 54, 27, 17)
        assert kp.public() == PublicKeyRecord(S.IREA_PUBLISHED, 27, 54)
        assert kp.private() == PrivateKeyRecord(S.IREA_PUBLISHED, 17, 54)

    def test_table2(self):
        kp = keygen(S.IREA_PUBLISHED, 5, 11, 7)
        assert (kp.p, kp.d) == (15, 8)

    def test_table3(self):
        kp = keygen(S.IREA_CORRECTED, 5, 11, 7)
        assert (kp.p, kp.d, kp.a) == (15, 23, 54)

    def test_textbook(self):
        kp = keygen(S.TEXTBOOK, 5, 11, 3)
        assert (kp.j, kp.phi, kp.d, kp.p) == (55, 40, 27, 0)
        assert kp.public() == PublicKeyRecord(S.TEXTBOOK, 3, 54)

    def test_accepts_string_scheme(self):
        assert keygen("irea-published", 5, 11, 13).d == 17

    def test_exponent_shares_factor_with_j(self):
        with pytest.raises(ExponentNotCoprime) as info:
            keygen(S.IREA_PUBLISHED, 5, 11, 5)
        assert info.value.g == 5

    def test_distinguishes_which_gcd_failed(self):
        with pytest.raises(ExponentNotCoprime) as info:
            keygen(S.IREA_PUBLISHED, 5, 11, 14)
        assert info.value.modulus_name == "phi(j)"
        # gcd(11, 40) = 1 but gcd(11, 55) = 11.
        with pytest.raises(ExponentNotCoprime) as info:
            keygen(S.IREA_PUBLISHED, 5, 11, 11)
        assert info.value.modulus_name == "j"

    @pytest.mark.parametrize("e", [1, 3, 41, 43, 47])
    def test_irea_range(self, e):
        with pytest.raises(ExponentOutOfRange):
            keygen(S.IREA_CORRECTED, 5, 11, e)

    def test_range_uses_first_prime_literally(self):
        # 7 > 5 is fine with b=5, but with b=11 the same e is out of range.
        keygen(S.IREA_PUBLISHED, 5, 11, 7)
        with pytest.raises(ExponentOutOfRange):
            keygen(S.IREA_PUBLISHED, 11, 5, 7)

    def test_zero_exponent(self):
        with pytest.raises(ExponentNotCoprime):
            keygen(S.TEXTBOOK, 5, 11, 0)

    def test_textbook_has_no_range_constraint(self):
        assert keygen(S.TEXTBOOK, 11, 5, 3).d == 27
        with pytest.raises(ExponentNotCoprime):
            keygen(S.TEXTBOOK, 5, 11, 4)

    def test_bad_primes(self):
        with pytest.raises(NotPrime, match="b=9"):
            keygen(S.TEXTBOOK, 9, 11, 3)
        with pytest.raises(NotPrime, match="v=1"):
            keygen(S.TEXTBOOK, 5, 1, 3)
        with pytest.raises(PrimesEqual):
            keygen(S.TEXTBOOK, 7, 7, 5)

    def test_composite_p_allowed(self):
        assert keygen(S.IREA_PUBLISHED, 5, 11, 13).p == 27  # 27 = 3**3

    def test_keys_immutable(self):
        kp = keygen(S.TEXTBOOK, 5, 11, 3)
        with pytest.raises(dataclasses.FrozenInstanceError):
            kp.d = 1

    @settings(max_examples=300)
    @given(keypairs())
    def test_invariants(self, kp):
        assert schemes.validate_keypair(kp) == []
        assert kp.j == kp.b * kp.v and kp.a == kp.j - 1
        modulus = kp.j if kp.scheme is S.IREA_PUBLISHED else kp.phi
        assert kp.d * kp.e % modulus == 1
        assert kp.d == oracles.inverse_by_search(kp.e, modulus)
        if kp.scheme.is_irea:
            assert kp.p == 2 * kp.e + 1 and (kp.p - 1) // 2 == kp.e


class TestAdmissible:
    def test_five_eleven(self):
        assert schemes.admissible_exponents(S.IREA_PUBLISHED, 5, 11) == [
            7, 9, 13, 17, 19, 21, 23, 27, 29, 31, 37, 39,
        ]
        assert schemes.admissible_exponents(S.TEXTBOOK, 5, 11) == [
            3, 7, 9, 11, 13, 17, 19, 21, 23, 27, 29, 31, 33, 37, 39,
        ]

    def test_every_admissible_exponent_is_accepted(self):
        for scheme in SchemeId:
            for b, v in [(5, 11), (11, 5), (3, 7), (13, 2)]:
                admissible = set(schemes.admissible_exponents(scheme, b, v))
                for e in range(0, (b - 1) * (v - 1)):
                    try:
                        keygen(scheme, b, v, e)
                        accepted = True
                    except (ExponentOutOfRange, ExponentNotCoprime):
                        accepted = False
                    # textbook also accepts e = 1, which the enumeration skips
                    expected = e in admissible or (e == 1 and not scheme.is_irea)
                    assert accepted == expected, (scheme, b, v, e)


class TestEncryptDecrypt:
    def test_table1(self):
        kp = keygen(S.IREA_PUBLISHED, 5, 11, 13)
        assert schemes.encrypt(kp.public(), 4) == 9
        assert schemes.decrypt(kp.private(), 9) == 4

    def test_table2(self):
        pub = PublicKeyRecord(S.IREA_PUBLISHED, 15, 54)
        priv = PrivateKeyRecord(S.IREA_PUBLISHED, 8, 54)
        assert schemes.encrypt(pub, 4) == 49
        assert schemes.decrypt(priv, 49) == 26

    def test_table3(self):
        priv = PrivateKeyRecord(S.IREA_CORRECTED, 23, 54)
        assert schemes.decrypt(priv, 49) == 4

    def test_ranges(self):
        kp = keygen(S.IREA_PUBLISHED, 5, 11, 13)
        with pytest.raises(MessageOutOfRange):
            schemes.encrypt(kp.public(), 55)
        with pytest.raises(CipherOutOfRange):
            schemes.decrypt(kp.private(), 55)

    def test_modulus_comes_from_a(self):
        pub = PublicKeyRecord(S.TEXTBOOK, 3, 54)
        assert schemes.encrypt(pub, 54) == pow(54, 3, 55)

    @settings(max_examples=200)
    @given(keypairs(), st.sampled_from([0, 1]))
    def test_zero_and_one_fixed(self, kp, M):
        assert schemes.encrypt(kp.public(), M) == M
        assert schemes.decrypt(kp.private(), M) == M

    @settings(max_examples=200)
    @given(keypairs(scheme_choices=(S.IREA_PUBLISHED,)), st.data())
    def test_schemes_share_encryption(self, kp, data):
        M = data.draw(st.integers(0, kp.j - 1))
        corrected = keygen(S.IREA_CORRECTED, kp.b, kp.v, kp.e)
        textbook = keygen(S.TEXTBOOK, kp.b, kp.v, kp.e)
        e1 = schemes.encrypt(kp.public(), M)
        assert e1 == schemes.encrypt(corrected.public(), M) == schemes.encrypt(textbook.public(), M)
        assert e1 == oracles.pow_by_loop(M, kp.e, kp.j)

    @settings(max_examples=200)
    @given(keypairs(scheme_choices=(S.TEXTBOOK, S.IREA_CORRECTED), max_prime=47), st.data())
    def test_round_trip_sound_schemes(self, kp, data):
        M = data.draw(st.integers(0, kp.j - 1))
        E = schemes.encrypt(kp.public(), M)
        assert schemes.decrypt(kp.private(), E) == M


class TestDeriveBaseExponent:
    def test_examples(self):
        assert schemes.derive_base_exponent(PublicKeyRecord(S.IREA_PUBLISHED, 27, 54)) == 13
        assert schemes.derive_base_exponent(PublicKeyRecord(S.IREA_CORRECTED, 15, 54)) == 7
        assert schemes.derive_base_exponent(PublicKeyRecord(S.TEXTBOOK, 14, 54)) == 14

    @pytest.mark.parametrize("p", [14, 1, 0, 2])
    def test_malformed(self, p):
        with pytest.raises(MalformedPublicKey):
            schemes.derive_base_exponent(PublicKeyRecord(S.IREA_PUBLISHED, p, 54))

    @given(keypairs())
    def test_recovers_e(self, kp):
        assert schemes.derive_base_exponent(kp.public()) == kp.e


class TestValidateKeypair:
    def test_table1_valid(self):
        assert schemes.validate_keypair(keygen(S.IREA_PUBLISHED, 5, 11, 13)) == []

    def test_bad_a(self):
        kp = dataclasses.replace(keygen(S.IREA_PUBLISHED, 5, 11, 13), a=53)
        assert schemes.validate_keypair(kp) == ["a != j-1"]

    def test_wrong_congruence_for_corrected(self):
        kp = dataclasses.replace(keygen(S.IREA_CORRECTED, 5, 11, 7), d=8)
        assert schemes.validate_keypair(kp) == ["d*e mod phi != 1"]

    def test_published_d_fails_corrected_check_and_vice_versa(self):
        pub = keygen(S.IREA_PUBLISHED, 5, 11, 7)
        assert schemes.validate_keypair(dataclasses.replace(pub, scheme=S.IREA_CORRECTED)) == [
            "d*e mod phi != 1"
        ]
        cor = keygen(S.IREA_CORRECTED, 5, 11, 7)
        assert schemes.validate_keypair(dataclasses.replace(cor, scheme=S.IREA_PUBLISHED)) == [
            "d*e mod j != 1"
        ]

    def test_collects_several(self):
        kp = dataclasses.replace(keygen(S.IREA_PUBLISHED, 5, 11, 13), b=4, p=26, j=54)
        problems = schemes.validate_keypair(kp)
        assert "b is not prime" in problems
        assert "p != 2*e+1" in problems
        assert "a != j-1" in problems

    def test_textbook_p_must_be_zero(self):
        kp = dataclasses.replace(keygen(S.TEXTBOOK, 5, 11, 3), p=7)
        assert schemes.validate_keypair(kp) == ["p != 0 for textbook"]

    def test_private_range(self):
        kp = keygen(S.TEXTBOOK, 5, 11, 3)
        assert math.gcd(kp.d, kp.phi) == 1
        bad = dataclasses.replace(kp, d=kp.d + 40 * 2)  # 107 >= 55
        assert schemes.validate_keypair(bad) == ["d outside [1, a+1)"]
