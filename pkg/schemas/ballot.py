import base64
import string
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from errors import PayloadParseError
from .enums import RejectionReasonEnum
from .types import CiphertextType, CommitmentType, SignatureType

AUDIT_PAYLOAD_VERSION = "v1"
HEX_DIGITS = frozenset(string.hexdigits)


class BallotType(BaseModel):
    """Ballot b = (c, rho, sigma)."""

    model_config = ConfigDict(frozen=True)

    ciphertext: CiphertextType
    reference: CommitmentType
    signature: SignatureType


class BallotBoxEntryType(BaseModel):
    model_config = ConfigDict(frozen=True)

    sequence: int = Field(ge=1)
    ballot: BallotType
    accepted_at: float


class AcknowledgementType(BaseModel):
    """Server signature over the canonical ballot encoding."""

    model_config = ConfigDict(frozen=True)

    signature: SignatureType


class CastResultType(BaseModel):
    accepted: bool
    reason: Optional[RejectionReasonEnum] = None
    entry: Optional[BallotBoxEntryType] = None
    acknowledgement: Optional[AcknowledgementType] = None


class AuditPayloadType(BaseModel):
    """
    QR content handed from the first to the second device.

    Text form: ``v1:<t_hex>:<r_hex>:<fingerprint_hex>``.
    """

    opening: int = Field(ge=0)
    randomness: int = Field(ge=0)
    fingerprint: str

    def to_text(self, scalar_bytes: int) -> str:
        return ":".join([
            AUDIT_PAYLOAD_VERSION,
            self.opening.to_bytes(scalar_bytes, "big").hex(),
            self.randomness.to_bytes(scalar_bytes, "big").hex(),
            self.fingerprint,
        ])

    def to_qr_line(self, scalar_bytes: int) -> str:
        return base64.b64encode(self.to_text(scalar_bytes).encode("ascii")).decode("ascii")

    @classmethod
    def parse(cls, text: str, order: Optional[int] = None) -> "AuditPayloadType":
        """
        Parse either the ``v1:`` text or its base64 QR line.

        Args:
            text: Payload text or QR line
            order: Group order q; t and r must lie in [0, q) when given

        Raises:
            PayloadParseError: unknown version or malformed fields
        """
        text = text.strip()
        if not text.startswith(AUDIT_PAYLOAD_VERSION + ":"):
            try:
                text = base64.b64decode(text, validate=True).decode("ascii")
            except (ValueError, UnicodeDecodeError) as e:
                raise PayloadParseError("audit payload is neither v1 text nor base64") from e

        parts = text.split(":")
        if len(parts) != 4 or parts[0] != AUDIT_PAYLOAD_VERSION:
            raise PayloadParseError(f"expected 4 fields with version {AUDIT_PAYLOAD_VERSION}")
        if not all(field and set(field) <= HEX_DIGITS for field in parts[1:]):
            raise PayloadParseError("audit payload fields must be unsigned hex")
        if len(parts[3]) % 2:
            raise PayloadParseError("audit payload fingerprint has an odd number of digits")
        payload = cls(opening=int(parts[1], 16), randomness=int(parts[2], 16), fingerprint=parts[3].lower())
        if order is not None:
            payload.check_range(order)
        return payload

    def check_range(self, order: int) -> None:
        """
        Raises:
            PayloadParseError: t or r outside [0, q)
        """
        if not (0 <= self.opening < order and 0 <= self.randomness < order):
            raise PayloadParseError("audit payload scalars must lie in [0, q)")
