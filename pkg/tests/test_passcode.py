import pytest

from errors import IntegrityError
from primitives.passcode import (
    derive_from_passcode,
    generate_passcode,
    hash_password,
    seal,
    unseal,
    verify_password,
)
from primitives.randomness import RandomSource
from schemas import SealedCredentialsType


def test_generate_passcode(rng):
    passcode = generate_passcode(rng)
    assert len(passcode) == 24
    assert "=" not in passcode
    assert passcode != generate_passcode(rng)
    assert generate_passcode(RandomSource(5)) == generate_passcode(RandomSource(5))


def test_derivation_deterministic():
    assert derive_from_passcode("MZXW6YTBOI3DKNRTGQ4TEMZV") == derive_from_passcode("MZXW6YTBOI3DKNRTGQ4TEMZV")


def test_key_and_password_separated(rng):
    for _ in range(50):
        derived = derive_from_passcode(generate_passcode(rng))
        assert len(derived.key) == 32
        assert derived.key.hex() != derived.login_password
        assert derived.key[:18] != derived.login_password.encode()


def test_one_character_changes_everything(rng):
    for _ in range(20):
        passcode = generate_passcode(rng)
        flipped = ("B" if passcode[0] == "A" else "A") + passcode[1:]
        a, b = derive_from_passcode(passcode), derive_from_passcode(flipped)
        assert a.key != b.key
        assert a.login_password != b.login_password
        assert a.key[:4] != b.key[:4]


def test_empty_passcode():
    with pytest.raises(ValueError):
        derive_from_passcode("")


def test_seal_roundtrip(small, production, rng):
    key = derive_from_passcode(generate_passcode(rng)).key
    for params, s, t in ((small, 7, 3), (production, production.q - 2, 123456789)):
        sealed = seal(key, s, t, params, rng)
        assert unseal(key, sealed, params) == (s, t)


def test_seal_fresh_nonces(small, rng):
    key = derive_from_passcode("PASSCODE").key
    blobs = set()
    for _ in range(1000):
        sealed = seal(key, 7, 3, small, rng)
        blobs.add(sealed.secret_key_blob[:24])
        assert unseal(key, sealed, small) == (7, 3)
    assert len(blobs) == 1000


def test_unseal_wrong_key(small, rng):
    sealed = seal(derive_from_passcode("RIGHT").key, 7, 3, small, rng)
    with pytest.raises(IntegrityError):
        unseal(derive_from_passcode("WRONG").key, sealed, small)


def test_unseal_tampered(small, rng):
    key = derive_from_passcode("RIGHT").key
    sealed = seal(key, 7, 3, small, rng)
    last = sealed.opening_blob[-1]
    tampered = SealedCredentialsType(
        secret_key_blob=sealed.secret_key_blob,
        opening_blob=sealed.opening_blob[:-1] + ("0" if last != "0" else "1"),
    )
    with pytest.raises(IntegrityError):
        unseal(key, tampered, small)


def test_blobs_not_swappable(small, rng):
    key = derive_from_passcode("RIGHT").key
    sealed = seal(key, 7, 3, small, rng)
    swapped = SealedCredentialsType(secret_key_blob=sealed.opening_blob, opening_blob=sealed.secret_key_blob)
    with pytest.raises(IntegrityError):
        unseal(key, swapped, small)


def test_password_hash(rng):
    record = hash_password("correct horse", rng)
    assert "correct horse" not in record.model_dump_json()
    assert verify_password("correct horse", record)
    assert not verify_password("correct horsf", record)
