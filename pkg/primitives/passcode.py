"""
Passcode delivery: key derivation, sealing of credentials, password hashing.

From a passcode tau two values are derived with PBKDF2-HMAC-SHA256 under
distinct labels: the sealing key k (32 bytes) and the login password. s and t
are sealed with AES-256-GCM under k; the voting server keeps only the sealed
blobs and a salted hash of the login password.
"""

import base64
from typing import Optional, Tuple

from cryptography.exceptions import InvalidKey, InvalidTag
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.pbkdf2 import PBKDF2HMAC

import config
from errors import IntegrityError
from primitives.encoding import decode_scalar, encode_scalar
from primitives.group import GroupParams
from primitives.randomness import RandomSource
from schemas.types import DerivedSecretsType, PasswordHashType, SealedCredentialsType

SEALING_KEY_LABEL = b"evercred/kdf/sealing-key/v1"
LOGIN_PASSWORD_LABEL = b"evercred/kdf/login-password/v1"
SEAL_SECRET_KEY_AAD = b"evercred/seal/secret-key/v1"
SEAL_OPENING_AAD = b"evercred/seal/opening/v1"

NONCE_BYTES = 12
LOGIN_PASSWORD_BYTES = 18


def generate_passcode(rng: RandomSource, n_bytes: Optional[int] = None) -> str:
    """Random base32 passcode, e.g. 'MZXW6YTBOI3DKNRTGQ4TEMZV'."""
    raw = rng.token_bytes(n_bytes or config.PASSCODE_BYTES)
    return base64.b32encode(raw).decode("ascii").rstrip("=")


def _pbkdf2(secret: bytes, salt: bytes, iterations: int, length: int = 32) -> bytes:
    kdf = PBKDF2HMAC(
        algorithm=hashes.SHA256(),
        length=length,
        salt=salt,
        iterations=iterations,
    )
    return kdf.derive(secret)


def derive_from_passcode(passcode: str, iterations: Optional[int] = None) -> DerivedSecretsType:
    """
    Derive (k, login password) from tau. Deterministic.

    Raises:
        ValueError: empty passcode
    """
    if not passcode:
        raise ValueError("passcode must be nonempty")
    iterations = iterations or config.PASSCODE_KDF_ITERATIONS
    secret = passcode.encode("utf-8")

    key = _pbkdf2(secret, SEALING_KEY_LABEL, iterations)
    password_bytes = _pbkdf2(secret, LOGIN_PASSWORD_LABEL, iterations, LOGIN_PASSWORD_BYTES)
    login_password = base64.urlsafe_b64encode(password_bytes).decode("ascii")
    return DerivedSecretsType(key=key, login_password=login_password)


def _seal_one(aead: AESGCM, plaintext: bytes, aad: bytes, rng: RandomSource) -> str:
    nonce = rng.token_bytes(NONCE_BYTES)
    return (nonce + aead.encrypt(nonce, plaintext, aad)).hex()


def _unseal_one(aead: AESGCM, blob_hex: str, aad: bytes) -> bytes:
    try:
        blob = bytes.fromhex(blob_hex)
    except ValueError as e:
        raise IntegrityError("sealed blob is not valid hex") from e
    if len(blob) <= NONCE_BYTES:
        raise IntegrityError("sealed blob too short")
    try:
        return aead.decrypt(blob[:NONCE_BYTES], blob[NONCE_BYTES:], aad)
    except InvalidTag as e:
        raise IntegrityError("sealed credentials failed authentication") from e


def seal(
    key: bytes,
    secret_key: int,
    opening: int,
    params: GroupParams,
    rng: Optional[RandomSource] = None,
) -> SealedCredentialsType:
    """Encrypt s and t under k with fresh nonces."""
    rng = rng or RandomSource()
    aead = AESGCM(key)
    return SealedCredentialsType(
        secret_key_blob=_seal_one(aead, encode_scalar(secret_key, params), SEAL_SECRET_KEY_AAD, rng),
        opening_blob=_seal_one(aead, encode_scalar(opening, params), SEAL_OPENING_AAD, rng),
    )


def unseal(key: bytes, sealed: SealedCredentialsType, params: GroupParams) -> Tuple[int, int]:
    """
    Recover (s, t).

    Raises:
        IntegrityError: wrong key or tampered blob
    """
    aead = AESGCM(key)
    secret_key = _unseal_one(aead, sealed.secret_key_blob, SEAL_SECRET_KEY_AAD)
    opening = _unseal_one(aead, sealed.opening_blob, SEAL_OPENING_AAD)
    try:
        return decode_scalar(secret_key, params), decode_scalar(opening, params)
    except ValueError as e:
        raise IntegrityError("sealed credentials have the wrong width for this group") from e


def hash_password(
    password: str,
    rng: Optional[RandomSource] = None,
    iterations: Optional[int] = None,
) -> PasswordHashType:
    rng = rng or RandomSource()
    iterations = iterations or config.PASSWORD_HASH_ITERATIONS
    salt = rng.token_bytes(config.PASSWORD_SALT_BYTES)
    digest = _pbkdf2(password.encode("utf-8"), salt, iterations)
    return PasswordHashType(salt=salt.hex(), digest=digest.hex(), iterations=iterations)


def verify_password(password: str, record: PasswordHashType) -> bool:
    kdf = PBKDF2HMAC(
        algorithm=hashes.SHA256(),
        length=32,
        salt=bytes.fromhex(record.salt),
        iterations=record.iterations,
    )
    try:
        kdf.verify(password.encode("utf-8"), bytes.fromhex(record.digest))
    except InvalidKey:
        return False
    return True
