"""
Schnorr signatures over the commitment group.

    keygen:  s <- [1, q),  p = g^s
    sign:    k = H_nonce(s || msg) (deterministic), R = g^k,
             e = H_chal(R || p || msg), z = k + e*s mod q
    verify:  R' = g^z * p^-e,  accept iff H_chal(R' || p || msg) == e

Deterministic nonces make every signature (and every acknowledgement) a pure
function of key and message, which keeps seeded scenarios reproducible.
"""

import logging
from typing import Union

from primitives.encoding import decode_signature, encode_element, encode_scalar
from primitives.group import (
    SIGNATURE_CHALLENGE_TAG,
    SIGNATURE_NONCE_TAG,
    GroupParams,
    hash_to_scalar,
)
from primitives.randomness import RandomSource
from schemas.types import SignatureType, SigningKeypairType

logger = logging.getLogger(__name__)


def signing_keygen(params: GroupParams, rng: RandomSource) -> SigningKeypairType:
    secret_key = rng.nonzero_below(params.q)
    return SigningKeypairType(secret_key=secret_key, public_key=params.exp(params.g, secret_key))


def public_key_from_secret(secret_key: int, params: GroupParams) -> int:
    return params.exp(params.g, secret_key)


def _challenge(commitment: int, public_key: int, message: bytes, params: GroupParams) -> int:
    data = encode_element(commitment, params) + encode_element(public_key, params) + message
    return hash_to_scalar(data, params, tag=SIGNATURE_CHALLENGE_TAG)


def sign(secret_key: int, message: bytes, params: GroupParams) -> SignatureType:
    public_key = public_key_from_secret(secret_key, params)
    k = hash_to_scalar(encode_scalar(secret_key, params) + message, params, tag=SIGNATURE_NONCE_TAG)
    if k == 0:
        k = 1
    e = _challenge(params.exp(params.g, k), public_key, message, params)
    z = (k + e * secret_key) % params.q
    return SignatureType(e=e, z=z)


def verify(
    public_key: int,
    message: bytes,
    signature: Union[SignatureType, bytes, None],
    params: GroupParams,
) -> bool:
    """
    Check a signature; never raises.

    ``signature`` may be the canonical byte encoding; malformed encodings,
    out-of-range components and keys outside the subgroup all verify false.
    """
    if isinstance(signature, (bytes, bytearray)):
        try:
            signature = decode_signature(bytes(signature), params)
        except ValueError:
            logger.debug("Malformed signature encoding")
            return False
    if not isinstance(signature, SignatureType):
        return False
    if not (0 <= signature.e < params.q and 0 <= signature.z < params.q):
        return False
    if not params.is_member(public_key):
        return False

    recovered = params.mul(
        params.exp(params.g, signature.z),
        params.exp(public_key, params.q - signature.e),
    )
    return _challenge(recovered, public_key, message, params) == signature.e
