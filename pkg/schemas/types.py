from pydantic import BaseModel, ConfigDict


class CommitmentType(BaseModel):
    """Pedersen commitment g^x h^r, a subgroup element."""

    model_config = ConfigDict(frozen=True)

    value: int


class CiphertextType(BaseModel):
    """ElGamal ciphertext (g^r, m * pk^r)."""

    model_config = ConfigDict(frozen=True)

    c1: int
    c2: int


class SignatureType(BaseModel):
    """Schnorr signature (challenge e, response z)."""

    model_config = ConfigDict(frozen=True)

    e: int
    z: int


class ElGamalKeypairType(BaseModel):
    model_config = ConfigDict(frozen=True)

    secret_key: int
    public_key: int


class SigningKeypairType(BaseModel):
    model_config = ConfigDict(frozen=True)

    secret_key: int
    public_key: int


class DerivedSecretsType(BaseModel):
    """Values derived from a passcode: the sealing key k and the login password."""

    model_config = ConfigDict(frozen=True)

    key: bytes
    login_password: str


class SealedCredentialsType(BaseModel):
    """AES-GCM blobs (nonce || ciphertext || tag, hex) of s and t."""

    model_config = ConfigDict(frozen=True)

    secret_key_blob: str
    opening_blob: str


class PasswordHashType(BaseModel):
    """PBKDF2-HMAC-SHA256 password record."""

    model_config = ConfigDict(frozen=True)

    salt: str
    digest: str
    iterations: int
