"""
Canonical byte encodings.

All integers are fixed-width big-endian: group elements use ceil(|p|/8) bytes,
scalars use ceil(|q|/8) bytes. These encodings are the preimages of every
signature and fingerprint, so they must never change silently.

    element(x)        = I2OSP(x, element_bytes)
    scalar(x)         = I2OSP(x, scalar_bytes)
    ciphertext(c)     = element(c1) || element(c2)
    signature(s)      = scalar(e) || scalar(z)
    ballot_message    = "evercred/ballot/v1" || ciphertext(c) || element(rho)
    ballot            = ballot_message || signature(sigma)

Hex forms are lowercase and keep the fixed width.
"""

from primitives.group import GroupParams
from schemas.types import CiphertextType, CommitmentType, SignatureType

BALLOT_DOMAIN = b"evercred/ballot/v1"


def encode_element(value: int, params: GroupParams) -> bytes:
    return value.to_bytes(params.element_bytes, "big")


def encode_scalar(value: int, params: GroupParams) -> bytes:
    return value.to_bytes(params.scalar_bytes, "big")


def decode_scalar(data: bytes, params: GroupParams) -> int:
    if len(data) != params.scalar_bytes:
        raise ValueError(f"scalar encoding must be {params.scalar_bytes} bytes")
    return int.from_bytes(data, "big")


def element_hex(value: int, params: GroupParams) -> str:
    return encode_element(value, params).hex()


def scalar_hex(value: int, params: GroupParams) -> str:
    return encode_scalar(value, params).hex()


def encode_ciphertext(ciphertext: CiphertextType, params: GroupParams) -> bytes:
    return encode_element(ciphertext.c1, params) + encode_element(ciphertext.c2, params)


def encode_signature(signature: SignatureType, params: GroupParams) -> bytes:
    return encode_scalar(signature.e, params) + encode_scalar(signature.z, params)


def decode_signature(data: bytes, params: GroupParams) -> SignatureType:
    width = params.scalar_bytes
    if len(data) != 2 * width:
        raise ValueError(f"signature encoding must be {2 * width} bytes")
    return SignatureType(
        e=int.from_bytes(data[:width], "big"),
        z=int.from_bytes(data[width:], "big"),
    )


def encode_ballot_message(
    ciphertext: CiphertextType, reference: CommitmentType, params: GroupParams
) -> bytes:
    """Signing preimage of a ballot: the pair (c, rho)."""
    return BALLOT_DOMAIN + encode_ciphertext(ciphertext, params) + encode_element(reference.value, params)


def encode_ballot(
    ciphertext: CiphertextType,
    reference: CommitmentType,
    signature: SignatureType,
    params: GroupParams,
) -> bytes:
    """Full ballot (c, rho, sigma); preimage of acknowledgements and fingerprints."""
    return encode_ballot_message(ciphertext, reference, params) + encode_signature(signature, params)
