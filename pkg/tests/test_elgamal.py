import pytest

from errors import GroupMembershipError, InvalidChoiceError, MalformedCiphertextError
from primitives.elgamal import Codebook, elgamal_decrypt, elgamal_encrypt, elgamal_keygen
from primitives.randomness import RandomSource
from schemas import CiphertextType


def test_worked_vector(small):
    assert elgamal_encrypt(8, 4, 2, small) == CiphertextType(c1=4, c2=3)
    assert elgamal_decrypt(3, CiphertextType(c1=4, c2=3), small) == 4


def test_roundtrip(small, production, rng):
    for params in (small, production):
        keys = elgamal_keygen(params, rng)
        for i in range(20 if params is small else 5):
            m = params.exp(params.g, rng.randbelow(params.q))
            r = rng.randbelow(params.q)
            assert elgamal_decrypt(keys.secret_key, elgamal_encrypt(keys.public_key, m, r, params), params) == m


def test_exhaustive_small_roundtrip(small):
    keys = elgamal_keygen(small, RandomSource(3))
    for exponent in range(11):
        m = small.exp(small.g, exponent)
        for r in range(11):
            ct = elgamal_encrypt(keys.public_key, m, r, small)
            assert elgamal_decrypt(keys.secret_key, ct, small) == m


def test_encryption_deterministic_for_fixed_r(small):
    assert elgamal_encrypt(8, 4, 7, small) == elgamal_encrypt(8, 4, 7, small)


def test_message_outside_subgroup(small):
    with pytest.raises(GroupMembershipError):
        elgamal_encrypt(8, 5, 2, small)


def test_malformed_ciphertext(small):
    with pytest.raises(MalformedCiphertextError):
        elgamal_decrypt(3, CiphertextType(c1=5, c2=3), small)


def test_codebook(small):
    codebook = Codebook(small, 3)
    assert codebook.entries == [2, 4, 8]
    assert codebook.encode(1) == 4
    assert codebook.decode(8) == 2
    assert codebook.decode(9) is None
    with pytest.raises(InvalidChoiceError):
        codebook.encode(3)
    with pytest.raises(InvalidChoiceError):
        codebook.encode(-1)


def test_codebook_size_bounds(small):
    with pytest.raises(ValueError):
        Codebook(small, 0)
    with pytest.raises(ValueError):
        Codebook(small, 11)


def test_match_encryption_recovers_choice(small):
    codebook = Codebook(small, 5)
    pk = 8
    for choice in range(5):
        for r in range(1, 11):
            ct = elgamal_encrypt(pk, codebook.encode(choice), r, small)
            assert codebook.match_encryption(pk, r, ct) == choice


def test_match_encryption_wrong_r(small):
    codebook = Codebook(small, 3)
    ct = elgamal_encrypt(8, codebook.encode(0), 2, small)
    assert codebook.match_encryption(8, 3, ct) is None
