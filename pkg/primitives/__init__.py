from .group import GroupParams, load_profile, hash_to_scalar, hash_identity, hash_to_group
from .randomness import RandomSource
from .commitment import (
    commit,
    commit_identity,
    verify_commitment,
    verify_identity_opening,
    equivocate,
    enumerate_openings,
)
from .elgamal import Codebook, elgamal_keygen, elgamal_encrypt, elgamal_decrypt
from .signature import signing_keygen, sign, verify
from .passcode import (
    generate_passcode,
    derive_from_passcode,
    seal,
    unseal,
    hash_password,
    verify_password,
)

__all__ = [
    "GroupParams",
    "load_profile",
    "hash_to_scalar",
    "hash_identity",
    "hash_to_group",
    "RandomSource",
    "commit",
    "commit_identity",
    "verify_commitment",
    "verify_identity_opening",
    "equivocate",
    "enumerate_openings",
    "Codebook",
    "elgamal_keygen",
    "elgamal_encrypt",
    "elgamal_decrypt",
    "signing_keygen",
    "sign",
    "verify",
    "generate_passcode",
    "derive_from_passcode",
    "seal",
    "unseal",
    "hash_password",
    "verify_password",
]
