"""
Voter Client - the first device.

Holds the voter's secrets, builds ballots b = (c, rho, sigma), casts them
together with the reference opening t and hands the audit payload to the
second device. s, t and the unsealing key k are destroyed after every cast.
"""

import hashlib
import logging
from typing import List, Optional, Tuple

from errors import (
    BallotRejectedError,
    IntegrityError,
    InvalidReceiptError,
    NoRecordError,
    RegistryMismatchError,
)
from primitives.commitment import commit_identity
from primitives.elgamal import Codebook, elgamal_encrypt
from primitives.encoding import encode_ballot, encode_ballot_message
from primitives.passcode import derive_from_passcode, unseal
from primitives.randomness import RandomSource
from primitives.signature import public_key_from_secret, sign, verify
from schemas import (
    AcknowledgementType,
    AuditPayloadType,
    BallotType,
    CommitmentType,
    CredentialPackageType,
    LoginCredentialsType,
    PasscodeDeliveryType,
    RegistryRecordType,
    Secret,
    SessionType,
    SimulationLog,
)
from agents.registrar.channel import ConfidentialChannel

logger = logging.getLogger(__name__)

ACTOR = "voter-client"

# Stands in for t in payloads of plain anonymous credentials, which have none
BASELINE_OPENING = 0


def ballot_fingerprint(ballot: BallotType, params) -> str:
    """Choice-independent fingerprint: SHA-256 of the canonical ballot encoding."""
    encoded = encode_ballot(ballot.ciphertext, ballot.reference, ballot.signature, params)
    return hashlib.sha256(encoded).hexdigest()


def create_ballot(
    vid: str,
    secret_key: int,
    opening: Optional[int],
    choice_index: int,
    election_pk: int,
    codebook: Codebook,
    rng: RandomSource,
    reference: Optional[CommitmentType] = None,
) -> Tuple[BallotType, AuditPayloadType]:
    """
    Build and sign a ballot.

    Args:
        vid: Voter identifier
        secret_key: Signing key s
        opening: Reference opening t (None with plain anonymous credentials)
        choice_index: Index into the codebook
        election_pk: Election public key
        codebook: Choice codebook
        rng: Source of the encryption randomness r
        reference: Use this rho instead of Comm(H(vid), t)

    Returns:
        Tuple of (ballot, audit payload)

    Raises:
        InvalidChoiceError: choice index outside the codebook
    """
    params = codebook.params
    message = codebook.encode(choice_index)
    r = rng.nonzero_below(params.q)
    ciphertext = elgamal_encrypt(election_pk, message, r, params)
    if reference is None:
        reference = commit_identity(vid, opening, params)
    signature = sign(secret_key, encode_ballot_message(ciphertext, reference, params), params)
    ballot = BallotType(ciphertext=ciphertext, reference=reference, signature=signature)

    payload = AuditPayloadType(
        opening=BASELINE_OPENING if opening is None else opening,
        randomness=r,
        fingerprint=ballot_fingerprint(ballot, params),
    )
    return ballot, payload


class VoterClientAgent:
    """
    One client per voter.

    Args:
        vid: Voter identifier
        codebook: Choice codebook (carries the group parameters)
        election_pk: Election public key
        server_key: Published acknowledgement verification key
        rng: Randomness for ballot encryption
        baseline: Plain anonymous credentials: own rho taken from the package, no t sent
    """

    def __init__(
        self,
        vid: str,
        codebook: Codebook,
        election_pk: int,
        server_key: int,
        rng: Optional[RandomSource] = None,
        log: Optional[SimulationLog] = None,
        baseline: bool = False,
    ):
        self.vid = vid
        self.codebook = codebook
        self.params = codebook.params
        self.election_pk = election_pk
        self.server_key = server_key
        self.rng = rng or RandomSource()
        self.log = log if log is not None else SimulationLog()
        self.baseline = baseline

        self._secret_key: Optional[Secret] = None
        self._opening: Optional[Secret] = None
        self._passcode: Optional[Secret] = None
        self._public_key: Optional[int] = None
        self._reference: Optional[CommitmentType] = None
        self._login: Optional[LoginCredentialsType] = None
        self._second_factor: Optional[str] = None

    # ------------------------------------------------------------------
    # Receiving credentials
    # ------------------------------------------------------------------

    def receive_package(self, package: CredentialPackageType) -> None:
        self._secret_key = Secret(package.secret_key, "signing-key")
        self._opening = Secret(package.opening, "reference-opening")
        self._public_key = package.public_key
        self._reference = package.reference

    def receive_passcode(self, delivery: PasscodeDeliveryType) -> None:
        self._passcode = Secret(delivery.passcode, "passcode")

    def receive(self, channel: ConfidentialChannel) -> int:
        """Take this voter's messages off the channel; returns how many were read."""
        messages = channel.receive(self.vid)
        for message in messages:
            if isinstance(message, CredentialPackageType):
                self.receive_package(message)
            elif isinstance(message, PasscodeDeliveryType):
                self.receive_passcode(message)
        return len(messages)

    def set_login(self, login: LoginCredentialsType) -> None:
        self._login = login
        self._second_factor = login.second_factor

    def set_second_factor(self, token: Optional[str]) -> None:
        self._second_factor = token

    def login_credentials(self) -> LoginCredentialsType:
        """
        The credentials this client authenticates with.

        In passcode mode the password is derived from tau on demand.
        """
        if self._login is not None:
            return self._login
        if self._passcode is None:
            raise NoRecordError(f"client for '{self.vid}' holds no login credentials")
        derived = derive_from_passcode(self._passcode.reveal())
        return LoginCredentialsType(
            vid=self.vid, password=derived.login_password, second_factor=self._second_factor
        )

    def check_registry(self, records: List[RegistryRecordType]) -> None:
        """
        Confirm that the published registry carries this voter's (p, rho).

        Raises:
            RegistryMismatchError: own record missing
        """
        if self._public_key is None or self._reference is None:
            raise NoRecordError("no credentials to check against the registry")
        own = RegistryRecordType(public_key=self._public_key, reference=self._reference)
        if own not in records:
            self.log.record(ACTOR, "registry_mismatch", vid=self.vid)
            raise RegistryMismatchError(f"registry has no record for voter '{self.vid}'")

    @property
    def reference(self) -> Optional[CommitmentType]:
        return self._reference

    def credential_package(self) -> CredentialPackageType:
        """
        The voter handing their (s, t) to someone else.

        Raises:
            SecretDestroyedError: the secrets were already used and destroyed
        """
        if self._secret_key is None:
            raise NoRecordError(f"client for '{self.vid}' holds no credentials")
        return CredentialPackageType(
            vid=self.vid,
            secret_key=self._secret_key.reveal(),
            opening=self._opening.reveal(),
            public_key=self._public_key,
            reference=self._reference,
        )

    # ------------------------------------------------------------------
    # Casting
    # ------------------------------------------------------------------

    def _authenticate(self, server) -> SessionType:
        login = self.login_credentials()
        return server.authenticate(login.vid, login.password, login.second_factor)

    def _cast_in_session(
        self, server, session: SessionType, secret_key: int, opening: int, choice_index: int
    ) -> Tuple[AcknowledgementType, AuditPayloadType]:
        reference = self._reference if self.baseline else None
        ballot, payload = create_ballot(
            self.vid,
            secret_key,
            None if self.baseline else opening,
            choice_index,
            self.election_pk,
            self.codebook,
            self.rng,
            reference=reference,
        )
        result = server.validate_and_cast(session, ballot, None if self.baseline else opening)
        if not result.accepted:
            self.log.record(ACTOR, "cast_rejected", vid=self.vid, reason=result.reason.value)
            raise BallotRejectedError(result.reason.value)

        encoded = encode_ballot(ballot.ciphertext, ballot.reference, ballot.signature, self.params)
        if not verify(self.server_key, encoded, result.acknowledgement.signature, self.params):
            self.log.record(ACTOR, "invalid_receipt", vid=self.vid)
            raise InvalidReceiptError("acknowledgement does not verify under the server key")
        self.log.record(ACTOR, "cast_confirmed", vid=self.vid, sequence=result.entry.sequence)
        return result.acknowledgement, payload

    def _destroy_secrets(self) -> None:
        for secret in (self._secret_key, self._opening):
            if secret is not None:
                secret.destroy()
        self.log.record(ACTOR, "secrets_destroyed", vid=self.vid)

    def cast(
        self, server, choice_index: int, session: Optional[SessionType] = None
    ) -> Tuple[AcknowledgementType, AuditPayloadType]:
        """
        Direct mode: authenticate, cast with the held (s, t), verify the ack.

        A ``session`` opened elsewhere (an insider) skips authentication.

        Returns:
            Tuple of (acknowledgement, audit payload)

        Raises:
            AuthenticationError: login rejected
            BallotRejectedError: server rejected the ballot
            InvalidReceiptError: acknowledgement does not verify
        """
        if self._secret_key is None:
            raise NoRecordError(f"client for '{self.vid}' holds no credentials")
        owned = session is None
        session = session or self._authenticate(server)
        try:
            return self._cast_in_session(
                server,
                session,
                self._secret_key.reveal(),
                self._opening.reveal(),
                choice_index,
            )
        finally:
            self._destroy_secrets()
            if owned:
                server.close_session(session)

    def passcode_cast(
        self, server, choice_index: int, session: Optional[SessionType] = None
    ) -> Tuple[AcknowledgementType, AuditPayloadType]:
        """
        Passcode mode: derive (k, password) from tau, authenticate, fetch and
        unseal (s, t), then cast.

        Raises:
            AuthenticationError: wrong tau or second factor
            IntegrityError: sealed credentials do not open under k
        """
        if self._passcode is None:
            raise NoRecordError(f"client for '{self.vid}' holds no passcode")
        derived = derive_from_passcode(self._passcode.reveal())
        key = Secret(derived.key, "sealing-key")
        owned = session is None
        try:
            if owned:
                session = server.authenticate(self.vid, derived.login_password, self._second_factor)
            sealed = server.retrieve_sealed_credentials(session)
            try:
                secret_key, opening = unseal(key.reveal(), sealed, self.params)
            except IntegrityError:
                self.log.record(ACTOR, "unseal_failed", vid=self.vid)
                raise
            self._public_key = public_key_from_secret(secret_key, self.params)
            self._reference = commit_identity(self.vid, opening, self.params)
            self._secret_key = Secret(secret_key, "signing-key")
            self._opening = Secret(opening, "reference-opening")
            del secret_key, opening
            return self._cast_in_session(
                server, session, self._secret_key.reveal(), self._opening.reveal(), choice_index
            )
        finally:
            key.destroy()
            del derived
            self._destroy_secrets()
            if owned and session is not None:
                server.close_session(session)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def dump_state(self) -> dict:
        """Full state serialization (instrumentation for the hygiene checks)."""

        def raw(secret: Optional[Secret]):
            return None if secret is None else secret.dump()

        return {
            "vid": self.vid,
            "baseline": self.baseline,
            "secret_key": raw(self._secret_key),
            "opening": raw(self._opening),
            "passcode": raw(self._passcode),
            "public_key": self._public_key,
            "reference": None if self._reference is None else self._reference.value,
            "login": None if self._login is None else self._login.model_dump(),
        }
