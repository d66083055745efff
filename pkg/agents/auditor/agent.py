"""
Second Device - ballot audit.

Authenticates as the voter, fetches the cast ballot with its acknowledgement
and runs four checks:

1. clash check: the fetched rho opens to H(vid) with the payload's t
2. plaintext: the codebook entry that re-encrypts to the fetched c under r
3. receipt: the acknowledgement verifies under the server key
4. fingerprint: the payload fingerprint matches the fetched ballot

Plaintext determination by re-encryption with the disclosed r is a local
stand-in for an interactive cast-as-intended exchange.
"""

import logging
from typing import List, Optional, Union

from primitives.commitment import verify_identity_opening
from primitives.elgamal import Codebook
from primitives.encoding import encode_ballot
from primitives.group import GroupParams
from primitives.signature import verify
from schemas import (
    AcknowledgementType,
    AuditPayloadType,
    AuditReportType,
    BallotType,
    LoginCredentialsType,
    Secret,
    SimulationLog,
    VerdictEnum,
)
from agents.client.agent import ballot_fingerprint

logger = logging.getLogger(__name__)

ACTOR = "second-device"


def verify_receipt(
    acknowledgement: AcknowledgementType,
    ballot: BallotType,
    server_key: int,
    params: GroupParams,
) -> bool:
    """Check the server's acknowledgement over the canonical ballot encoding; never raises."""
    encoded = encode_ballot(ballot.ciphertext, ballot.reference, ballot.signature, params)
    return verify(server_key, encoded, acknowledgement.signature, params)


class SecondDeviceAgent:
    """
    Args:
        codebook: Choice codebook (carries the group parameters)
        election_pk: Election public key
        server_key: Published acknowledgement verification key
        baseline: Plain anonymous credentials: no opening, clash check skipped
    """

    def __init__(
        self,
        codebook: Codebook,
        election_pk: int,
        server_key: int,
        log: Optional[SimulationLog] = None,
        baseline: bool = False,
    ):
        self.codebook = codebook
        self.params = codebook.params
        self.election_pk = election_pk
        self.server_key = server_key
        self.log = log if log is not None else SimulationLog()
        self.baseline = baseline
        self._reports: List[AuditReportType] = []

        self.log.record(
            ACTOR,
            "trust_assumption",
            detail="the voter identifier is known to the voter and entered by hand",
        )

    def audit(
        self,
        vid: str,
        payload: Union[AuditPayloadType, str],
        server,
        login: LoginCredentialsType,
    ) -> AuditReportType:
        """
        Audit the ballot the server holds for ``vid``.

        Args:
            vid: Voter identifier as known to the voter
            payload: Audit payload, parsed or as ``v1:`` text / QR line
            server: Voting server
            login: Voter login credentials (second-device authentication)

        Returns:
            Report with one result per check; verdict PASS iff all hold

        Raises:
            PayloadParseError: payload does not parse
            AuthenticationError: login rejected
            NoBallotCastError: nothing cast for this voter
        """
        if isinstance(payload, str):
            payload = AuditPayloadType.parse(payload, self.params.q)
        else:
            payload.check_range(self.params.q)
        opening = Secret(payload.opening, "reference-opening")
        randomness = Secret(payload.randomness, "encryption-randomness")
        fingerprint = payload.fingerprint
        payload = None

        session = None
        try:
            session = server.authenticate(login.vid, login.password, login.second_factor)
            entry, acknowledgement = server.fetch_ballot_for_audit(session)
            ballot = entry.ballot

            clash_check = None
            if not self.baseline:
                clash_check = verify_identity_opening(ballot.reference, vid, opening.reveal(), self.params)
            plaintext = self.codebook.match_encryption(self.election_pk, randomness.reveal(), ballot.ciphertext)
        finally:
            opening.destroy()
            randomness.destroy()
            if session is not None:
                server.close_session(session)

        receipt_valid = verify_receipt(acknowledgement, ballot, self.server_key, self.params)
        fingerprint_match = fingerprint == ballot_fingerprint(ballot, self.params)

        passed = clash_check is not False and plaintext is not None and receipt_valid and fingerprint_match
        report = AuditReportType(
            vid=vid,
            clash_check=clash_check,
            plaintext_choice=plaintext,
            receipt_valid=receipt_valid,
            fingerprint_match=fingerprint_match,
            verdict=VerdictEnum.PASS if passed else VerdictEnum.FAIL,
        )
        self._reports.append(report)
        self.log.record(ACTOR, "audit", vid=vid, verdict=report.verdict.value)
        return report

    def dump_state(self) -> dict:
        """Full state serialization (instrumentation for the no-retention check)."""
        return {
            "baseline": self.baseline,
            "reports": [r.model_dump(mode="json") for r in self._reports],
        }
