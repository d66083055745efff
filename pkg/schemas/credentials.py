from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .types import CommitmentType, PasswordHashType, SealedCredentialsType

VoterId = str


class RegistryRecordType(BaseModel):
    """Public registry record (p, rho); carries no voter identifier."""

    model_config = ConfigDict(frozen=True)

    public_key: int
    reference: CommitmentType


class VoterCredentialsType(BaseModel):
    """Everything the registrar generates for one voter: (s, p, t, rho)."""

    vid: VoterId = Field(min_length=1)
    secret_key: int
    public_key: int
    opening: int
    reference: CommitmentType

    def registry_record(self) -> RegistryRecordType:
        return RegistryRecordType(public_key=self.public_key, reference=self.reference)


class CredentialPackageType(BaseModel):
    """Direct-mode delivery to the voter: s and t plus the public (p, rho)."""

    vid: VoterId = Field(min_length=1)
    secret_key: int
    opening: int
    public_key: int
    reference: CommitmentType


class PasscodeDeliveryType(BaseModel):
    """Passcode-mode delivery to the voter."""

    vid: VoterId = Field(min_length=1)
    passcode: str = Field(min_length=1)


class ServerProvisioningRecordType(BaseModel):
    """Passcode-mode delivery to the voting server; holds neither tau, k nor plaintext s/t."""

    vid: VoterId = Field(min_length=1)
    password_hash: PasswordHashType
    sealed: SealedCredentialsType


class LoginCredentialsType(BaseModel):
    vid: VoterId = Field(min_length=1)
    password: str
    second_factor: Optional[str] = None


class AuthRecordType(BaseModel):
    """Server-side login record; second_factor is set iff 2FA is enabled."""

    vid: VoterId = Field(min_length=1)
    password_hash: PasswordHashType
    second_factor: Optional[str] = None


class DeliveryEventType(BaseModel):
    vid: VoterId
    recipient: str
    kind: str
    retained: bool
