"""
Voting Server - authentication, ballot validation and the digital ballot box.

A cast is accepted only if the ballot passes every check in
``validation_rules``: most importantly rho == Comm(H(vid), t) for the
authenticated vid, and a valid signature under the registry key of rho. The
reference opening t is held in the session only for the duration of the call
and destroyed before it returns.

The ballot box is single-writer: casts are serialized on one lock. Reads take
a snapshot under the same lock.
"""

import logging
import secrets
import threading
import time
from collections import Counter
from typing import Callable, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel

import config
from errors import (
    AdversarialModeError,
    AuthenticationError,
    InvalidSessionError,
    ModeMismatchError,
    NoBallotCastError,
    NoRecordError,
)
from primitives.encoding import encode_ballot
from primitives.group import GroupParams
from primitives.passcode import hash_password, verify_password
from primitives.randomness import RandomSource
from primitives.signature import sign, signing_keygen
from schemas import (
    AcknowledgementType,
    AuthRecordType,
    BallotBoxEntryType,
    BallotType,
    CastResultType,
    CommitmentType,
    DeliveryModeEnum,
    LoginCredentialsType,
    RegistryRecordType,
    RejectionReasonEnum,
    RevotePolicyEnum,
    SealedCredentialsType,
    Secret,
    ServerBehaviorEnum,
    ServerProvisioningRecordType,
    SessionType,
    SimulationLog,
)
from agents.registrar.channel import SERVER_RECIPIENT, ConfidentialChannel
from .validation_rules import BALLOT_CHECKS, BASELINE_BALLOT_CHECKS, CastContext, validate_ballot

logger = logging.getLogger(__name__)

ACTOR = "voting-server"
LOGIN_PASSWORD_BYTES = 18
SECOND_FACTOR_BYTES = 8


class ServerSettingsType(BaseModel):
    delivery_mode: DeliveryModeEnum = DeliveryModeEnum.DIRECT
    two_factor: bool = False
    revote_policy: RevotePolicyEnum = RevotePolicyEnum.FORBIDDEN
    baseline_anon_creds: bool = False
    behavior: ServerBehaviorEnum = ServerBehaviorEnum.HONEST


class VotingServerAgent:
    """
    Args:
        params: Group parameters
        settings: Mode switches (delivery mode, 2FA, revote policy, baseline, behavior)
        rng: Randomness source for passwords, salts, tokens and the ack key
        channel: Channel on which the registrar provisions passcode records
        clock: Time source for session and acceptance timestamps
    """

    def __init__(
        self,
        params: GroupParams,
        settings: Optional[ServerSettingsType] = None,
        rng: Optional[RandomSource] = None,
        channel: Optional[ConfidentialChannel] = None,
        log: Optional[SimulationLog] = None,
        clock: Callable[[], float] = time.time,
    ):
        self.params = params
        self.settings = settings or ServerSettingsType()
        self.rng = rng or RandomSource()
        self.log = log if log is not None else SimulationLog()
        self.channel = channel
        self.clock = clock

        self._ack_keypair = signing_keygen(params, self.rng.fork("ack-key"))
        self._lock = threading.RLock()

        self._auth: Dict[str, AuthRecordType] = {}
        self._sealed: Dict[str, SealedCredentialsType] = {}
        self._registry: Dict[int, List[int]] = {}
        self._sessions: Dict[str, SessionType] = {}
        self._failed_attempts: Counter = Counter()

        self._box: List[BallotBoxEntryType] = []
        self._acks: Dict[int, AcknowledgementType] = {}
        self._has_voted: set = set()
        self._reference_seq: Dict[int, int] = {}
        # Volatile: used for audit fetches only, never exported
        self._seq_by_vid: Dict[str, int] = {}
        self._audit_redirects: Dict[str, int] = {}

        self.log.record(
            ACTOR,
            "trust_assumption",
            detail="second-device authentication reuses the voter login",
        )

    @property
    def verification_key(self) -> int:
        """Published key under which acknowledgements verify."""
        return self._ack_keypair.public_key

    @property
    def _checks(self):
        return BASELINE_BALLOT_CHECKS if self.settings.baseline_anon_creds else BALLOT_CHECKS

    # ------------------------------------------------------------------
    # Setup
    # ------------------------------------------------------------------

    def load_registry(self, records: List[RegistryRecordType]) -> None:
        """Index the public registry by the exact value of rho."""
        with self._lock:
            self._registry = {}
            for record in records:
                self._registry.setdefault(record.reference.value, []).append(record.public_key)
        self.log.record(ACTOR, "registry_loaded", records=len(records))

    def _issue_second_factor(self, vid: str) -> Optional[str]:
        if not self.settings.two_factor:
            return None
        return self.rng.token_bytes(SECOND_FACTOR_BYTES).hex()

    def enroll_voter(self, vid: str) -> LoginCredentialsType:
        """
        Direct mode: issue login credentials independent of the registrar.

        Returns:
            Credentials to hand to the voter out of band
        """
        if self.settings.delivery_mode != DeliveryModeEnum.DIRECT:
            raise ModeMismatchError("passcode-mode logins are provisioned by the registrar")
        password = self.rng.token_bytes(LOGIN_PASSWORD_BYTES).hex()
        second_factor = self._issue_second_factor(vid)
        with self._lock:
            self._auth[vid] = AuthRecordType(
                vid=vid,
                password_hash=hash_password(password, self.rng),
                second_factor=second_factor,
            )
        self.log.record(ACTOR, "voter_enrolled", vid=vid, two_factor=self.settings.two_factor)
        return LoginCredentialsType(vid=vid, password=password, second_factor=second_factor)

    def accept_provisioning(self, record: ServerProvisioningRecordType) -> Optional[str]:
        """
        Passcode mode: store the hashed login password and sealed (s, t).

        Returns:
            The second-factor token for the voter when 2FA is on
        """
        if self.settings.delivery_mode != DeliveryModeEnum.PASSCODE:
            raise ModeMismatchError("provisioning records are only accepted in passcode mode")
        second_factor = self._issue_second_factor(record.vid)
        with self._lock:
            self._auth[record.vid] = AuthRecordType(
                vid=record.vid,
                password_hash=record.password_hash,
                second_factor=second_factor,
            )
            self._sealed[record.vid] = record.sealed
        self.log.record(ACTOR, "provisioning_stored", vid=record.vid, two_factor=self.settings.two_factor)
        return second_factor

    def receive_provisioning(self) -> Dict[str, Optional[str]]:
        """Drain the channel; returns vid -> second-factor token."""
        if self.channel is None:
            return {}
        tokens = {}
        for message in self.channel.receive(SERVER_RECIPIENT):
            if isinstance(message, ServerProvisioningRecordType):
                tokens[message.vid] = self.accept_provisioning(message)
        return tokens

    # ------------------------------------------------------------------
    # Authentication
    # ------------------------------------------------------------------

    def _fail_login(self, vid: str, reason: str) -> AuthenticationError:
        with self._lock:
            self._failed_attempts[vid] += 1
        self.log.record(ACTOR, "authentication_failed", vid=vid, reason=reason)
        return AuthenticationError()

    def authenticate(self, vid: str, password: str, second_factor: Optional[str] = None) -> SessionType:
        """
        Open a session.

        Raises:
            AuthenticationError: unknown vid, bad password or bad second factor
                (same type and message for all three)
        """
        record = self._auth.get(vid)
        if record is None:
            raise self._fail_login(vid, "unknown-voter")
        if not verify_password(password, record.password_hash):
            raise self._fail_login(vid, "bad-password")
        if record.second_factor is not None:
            if second_factor is None or not secrets.compare_digest(second_factor, record.second_factor):
                raise self._fail_login(vid, "bad-second-factor")
        return self._open_session(vid)

    def _open_session(self, vid: str) -> SessionType:
        session = SessionType(session_id=secrets.token_hex(16), vid=vid, created_at=self.clock())
        with self._lock:
            self._sessions[session.session_id] = session
            while len(self._sessions) > config.MAX_OPEN_SESSIONS:
                self._sessions.pop(next(iter(self._sessions)))
        self.log.record(ACTOR, "authenticated", vid=vid)
        return session

    def close_session(self, session: Union[SessionType, str]) -> None:
        """Forget a session; closing an unknown or closed session is a no-op."""
        session_id = session if isinstance(session, str) else session.session_id
        with self._lock:
            closed = self._sessions.pop(session_id, None)
        if closed is not None:
            self.log.record(ACTOR, "session_closed", vid=closed.vid)

    def _session(self, session: Union[SessionType, str]) -> SessionType:
        session_id = session if isinstance(session, str) else session.session_id
        found = self._sessions.get(session_id)
        if found is None:
            raise InvalidSessionError("failure")
        return found

    def failed_attempts(self, vid: str) -> int:
        return self._failed_attempts[vid]

    # ------------------------------------------------------------------
    # Casting
    # ------------------------------------------------------------------

    def validate_and_cast(
        self,
        session: Union[SessionType, str],
        ballot: BallotType,
        opening: Optional[int] = None,
    ) -> CastResultType:
        """
        Validate a ballot for the session's voter and store it if valid.

        ``opening`` (t) lives in the session slot only during this call; it is
        destroyed on every path and never logged or stored.

        Returns:
            Accepted result with entry and acknowledgement, or rejection reason
        """
        try:
            active = self._session(session)
        except InvalidSessionError:
            self.log.record(ACTOR, "cast_rejected", reason=RejectionReasonEnum.GENERIC_FAILURE.value)
            return CastResultType(accepted=False, reason=RejectionReasonEnum.GENERIC_FAILURE)

        with self._lock:
            active.transient_opening = Secret(opening, "reference-opening") if opening is not None else None
            opening = None
            try:
                reference = ballot.reference.value
                ctx = CastContext(
                    params=self.params,
                    vid=active.vid,
                    ballot=ballot,
                    opening=active.transient_opening,
                    registry_keys=list(self._registry.get(reference, [])),
                    vid_has_voted=active.vid in self._has_voted,
                    reference_used=reference in self._reference_seq,
                    revote_policy=self.settings.revote_policy,
                )
                accepted, reason = validate_ballot(ctx, self._checks)
            finally:
                if active.transient_opening is not None:
                    active.transient_opening.destroy()
                active.transient_opening = None
                ctx = None
            assert active.transient_opening is None

            if not accepted:
                self.log.record(ACTOR, "cast_rejected", vid=active.vid, reason=reason.value)
                return CastResultType(accepted=False, reason=reason)

            entry = BallotBoxEntryType(sequence=len(self._box) + 1, ballot=ballot, accepted_at=self.clock())
            acknowledgement = AcknowledgementType(
                signature=sign(
                    self._ack_keypair.secret_key,
                    encode_ballot(ballot.ciphertext, ballot.reference, ballot.signature, self.params),
                    self.params,
                )
            )
            self._box.append(entry)
            self._acks[entry.sequence] = acknowledgement
            self._has_voted.add(active.vid)
            self._reference_seq[reference] = entry.sequence
            self._seq_by_vid[active.vid] = entry.sequence

        self.log.record(ACTOR, "cast_accepted", vid=active.vid, sequence=entry.sequence)
        return CastResultType(accepted=True, entry=entry, acknowledgement=acknowledgement)

    def has_voted(self, vid: str) -> bool:
        return vid in self._has_voted

    # ------------------------------------------------------------------
    # Audit and passcode retrieval
    # ------------------------------------------------------------------

    def redirect_audit(self, vid: str, reference: CommitmentType) -> None:
        """Colluding server: show ``vid`` the ballot carrying ``reference``."""
        if self.settings.behavior != ServerBehaviorEnum.COLLUDING:
            raise AdversarialModeError("audit redirection requires a colluding server")
        with self._lock:
            sequence = self._reference_seq.get(reference.value)
            if sequence is None:
                raise NoBallotCastError("no ballot carries that reference")
            self._audit_redirects[vid] = sequence
        self.log.record(ACTOR, "audit_redirected", vid=vid)

    def fetch_ballot_for_audit(
        self, session: Union[SessionType, str]
    ) -> Tuple[BallotBoxEntryType, AcknowledgementType]:
        """
        The ballot this voter cast, with its acknowledgement.

        Raises:
            NoBallotCastError: nothing cast for this voter
        """
        active = self._session(session)
        with self._lock:
            sequence = self._audit_redirects.get(active.vid, self._seq_by_vid.get(active.vid))
            if sequence is None:
                raise NoBallotCastError("no ballot cast for this voter")
            entry = self._box[sequence - 1]
            acknowledgement = self._acks[sequence]
        self.log.record(ACTOR, "audit_fetch", vid=active.vid)
        return entry, acknowledgement

    def retrieve_sealed_credentials(self, session: Union[SessionType, str]) -> SealedCredentialsType:
        """
        Passcode mode: return the sealed (s, t); the server holds no key for them.

        Raises:
            ModeMismatchError: server runs in direct mode
            NoRecordError: no provisioning record for the voter
        """
        if self.settings.delivery_mode != DeliveryModeEnum.PASSCODE:
            raise ModeMismatchError("sealed credentials exist only in passcode mode")
        active = self._session(session)
        sealed = self._sealed.get(active.vid)
        if sealed is None:
            raise NoRecordError("no sealed credentials for this voter")
        self.log.record(ACTOR, "sealed_credentials_served", vid=active.vid)
        return sealed

    # ------------------------------------------------------------------
    # Exports and inspection
    # ------------------------------------------------------------------

    def export_ballot_box(self) -> List[BallotBoxEntryType]:
        """Consistent snapshot of the box in append order."""
        with self._lock:
            return list(self._box)

    def compromise(self) -> "ServerInsider":
        self.log.record(ACTOR, "compromised")
        return ServerInsider(self)

    def dump_state(self) -> dict:
        """Full state serialization (instrumentation for the discard checks)."""
        with self._lock:
            return {
                "settings": self.settings.model_dump(mode="json"),
                "auth": {vid: r.model_dump() for vid, r in self._auth.items()},
                "sealed": {vid: s.model_dump() for vid, s in self._sealed.items()},
                "registry": {str(k): v for k, v in self._registry.items()},
                "sessions": {
                    sid: {
                        "vid": s.vid,
                        "created_at": s.created_at,
                        "transient_opening": None if s.transient_opening is None else s.transient_opening.dump(),
                    }
                    for sid, s in self._sessions.items()
                },
                "failed_attempts": dict(self._failed_attempts),
                "box": [e.model_dump() for e in self._box],
                "acks": {str(k): a.model_dump() for k, a in self._acks.items()},
                "has_voted": sorted(self._has_voted),
                "reference_seq": {str(k): v for k, v in self._reference_seq.items()},
                "seq_by_vid": dict(self._seq_by_vid),
                "audit_redirects": dict(self._audit_redirects),
            }


class ServerInsider:
    """Capabilities of an adversary in control of the voting server."""

    def __init__(self, server: VotingServerAgent):
        self._server = server

    def open_session(self, vid: str) -> SessionType:
        """Session for any voter, bypassing password and second factor."""
        return self._server._open_session(vid)

    def stolen_database(self) -> dict:
        return {
            "auth": dict(self._server._auth),
            "sealed": dict(self._server._sealed),
        }
