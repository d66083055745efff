from primitives.encoding import encode_signature
from primitives.randomness import RandomSource
from primitives.signature import public_key_from_secret, sign, signing_keygen, verify
from schemas import SignatureType

MESSAGE = b"evercred test message"


def flip_bit(data: bytes, index: int = 0) -> bytes:
    return data[:index] + bytes([data[index] ^ 1]) + data[index + 1:]


def test_roundtrip(small, production, rng):
    for params in (small, production):
        keys = signing_keygen(params, rng)
        assert keys.public_key == public_key_from_secret(keys.secret_key, params)
        assert verify(keys.public_key, MESSAGE, sign(keys.secret_key, MESSAGE, params), params)


def test_signing_is_deterministic(production, rng):
    keys = signing_keygen(production, rng)
    assert sign(keys.secret_key, MESSAGE, production) == sign(keys.secret_key, MESSAGE, production)


def test_altered_message(production, rng):
    keys = signing_keygen(production, rng)
    signature = sign(keys.secret_key, MESSAGE, production)
    for index in range(len(MESSAGE)):
        assert not verify(keys.public_key, flip_bit(MESSAGE, index), signature, production)


def test_altered_signature(production, rng):
    keys = signing_keygen(production, rng)
    signature = sign(keys.secret_key, MESSAGE, production)
    assert not verify(keys.public_key, MESSAGE, SignatureType(e=signature.e, z=(signature.z + 1) % production.q), production)
    assert not verify(keys.public_key, MESSAGE, SignatureType(e=(signature.e + 1) % production.q, z=signature.z), production)


def test_independent_key_rejects(production):
    rng = RandomSource(11)
    for _ in range(200):
        keys = signing_keygen(production, rng)
        other = signing_keygen(production, rng)
        assert not verify(other.public_key, MESSAGE, sign(keys.secret_key, MESSAGE, production), production)


def test_byte_encoded_signature(production, rng):
    keys = signing_keygen(production, rng)
    encoded = encode_signature(sign(keys.secret_key, MESSAGE, production), production)
    assert verify(keys.public_key, MESSAGE, encoded, production)
    assert not verify(keys.public_key, MESSAGE, flip_bit(encoded, len(encoded) - 1), production)


def test_malformed_signature_is_false_not_error(production, rng):
    keys = signing_keygen(production, rng)
    assert not verify(keys.public_key, MESSAGE, b"\x00\x01", production)
    assert not verify(keys.public_key, MESSAGE, None, production)
    assert not verify(keys.public_key, MESSAGE, SignatureType(e=-1, z=0), production)
    assert not verify(keys.public_key, MESSAGE, SignatureType(e=0, z=production.q), production)


def test_key_outside_subgroup(small, rng):
    keys = signing_keygen(small, rng)
    assert not verify(5, MESSAGE, sign(keys.secret_key, MESSAGE, small), small)
