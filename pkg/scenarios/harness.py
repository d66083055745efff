"""
Election harness: wires registrar, voting server, voter clients and the
second device into one simulated election.

Every actor draws from its own fork of the seeded randomness source, so an
election with a given seed replays bit for bit whatever order the casts run in.
The harness-held election secret key exists only for the tally.
"""

import itertools
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

import config
from errors import EvercredError, ScenarioError
from agents.auditor import SecondDeviceAgent
from agents.client import VoterClientAgent, create_ballot
from agents.registrar import ConfidentialChannel, RegistrarAgent
from agents.server import ServerSettingsType, VotingServerAgent
from board import format_ballot_box, format_registry, scan_privacy_leakage, verify_eligibility
from primitives.elgamal import Codebook, elgamal_decrypt, elgamal_keygen
from primitives.group import GroupParams, hash_identity, load_profile
from primitives.randomness import RandomSource
from schemas import (
    AcknowledgementType,
    AuditPayloadType,
    AuditReportType,
    CastResultType,
    CredentialPackageType,
    DeliveryModeEnum,
    LeakReportType,
    OrderPolicyEnum,
    ProfileEnum,
    RegistryRecordType,
    RevotePolicyEnum,
    ServerBehaviorEnum,
    SimulationLog,
    VerificationReportType,
)

logger = logging.getLogger(__name__)

VOTER_NAMES = [
    "alice", "bob", "carol", "dave", "erin", "frank", "grace", "heidi",
    "ivan", "judy", "mallory", "niaj", "olivia", "peggy", "rupert", "sybil",
]

REGISTRY_FILE = "registry.txt"
BALLOT_BOX_FILE = "ballot_box.txt"


class HarnessSettingsType(BaseModel):
    profile: ProfileEnum = ProfileEnum(config.DEFAULT_PROFILE)
    seed: int = config.DEFAULT_SEED
    voters: int = Field(default=config.DEFAULT_VOTERS, ge=0)
    choices: int = Field(default=config.DEFAULT_CHOICES, ge=1)
    mode: DeliveryModeEnum = DeliveryModeEnum.DIRECT
    two_factor: bool = False
    revote: RevotePolicyEnum = RevotePolicyEnum.FORBIDDEN
    revoters: int = Field(default=0, ge=0)  # voters who cast a second time (passcode mode, last-counts)
    baseline: bool = False
    order: OrderPolicyEnum = OrderPolicyEnum.SORTED
    adversarial_registrar: bool = False
    server_behavior: ServerBehaviorEnum = ServerBehaviorEnum.HONEST
    parallel: bool = True

    def parameters(self) -> Dict[str, str]:
        """Rendered into reports."""
        return {
            "profile": self.profile.value,
            "voters": str(self.voters),
            "mode": self.mode.value,
            "2fa": "on" if self.two_factor else "off",
            "revote": self.revote.value,
            "baseline": str(self.baseline).lower(),
        }


def voter_ids(count: int, params: GroupParams) -> List[str]:
    """
    ``count`` identifiers with pairwise distinct H(vid).

    In the toy group hashes collide often; colliding names are skipped.

    Raises:
        ScenarioError: count < 1, or more voters than the group has hash values
    """
    if count < 1:
        raise ScenarioError("setup", "an election needs at least one voter")
    if count > params.q:
        raise ScenarioError("setup", f"group of order {params.q} separates at most {params.q} voters")

    chosen: List[str] = []
    seen = set()
    candidates = itertools.chain(VOTER_NAMES, (f"voter-{i:03d}" for i in itertools.count(1)))
    for vid in candidates:
        identity = hash_identity(vid, params)
        if identity in seen:
            continue
        seen.add(identity)
        chosen.append(vid)
        if len(chosen) == count:
            break
    return chosen


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Re-raise protocol errors as a ScenarioError naming the stage."""
    try:
        yield
    except ScenarioError:
        raise
    except EvercredError as e:
        raise ScenarioError(name, str(e)) from e


class ElectionHarness:
    """
    Args:
        settings: Election settings
        log: Shared simulation log (a fresh one if None)
    """

    def __init__(self, settings: Optional[HarnessSettingsType] = None, log: Optional[SimulationLog] = None):
        self.settings = settings or HarnessSettingsType()
        self.params = load_profile(self.settings.profile.value)
        self.rng = RandomSource(self.settings.seed)
        self.log = log if log is not None else SimulationLog()
        self.channel = ConfidentialChannel(self.log)

        self.election_keys = elgamal_keygen(self.params, self.rng.fork("election-key"))
        self.codebook = Codebook(self.params, self.settings.choices)

        self.registrar = RegistrarAgent(
            self.params,
            rng=self.rng.fork("registrar"),
            channel=self.channel,
            log=self.log,
            delivery_mode=self.settings.mode,
            adversarial=self.settings.adversarial_registrar,
        )
        self.server = VotingServerAgent(
            self.params,
            ServerSettingsType(
                delivery_mode=self.settings.mode,
                two_factor=self.settings.two_factor,
                revote_policy=self.settings.revote,
                baseline_anon_creds=self.settings.baseline,
                behavior=self.settings.server_behavior,
            ),
            rng=self.rng.fork("server"),
            channel=self.channel,
            log=self.log,
        )
        self.second_device = SecondDeviceAgent(
            self.codebook,
            self.election_pk,
            self.server.verification_key,
            log=self.log,
            baseline=self.settings.baseline,
        )

        self.vids = voter_ids(self.settings.voters, self.params)
        self.clients: Dict[str, VoterClientAgent] = {}
        self.registry: List[RegistryRecordType] = []
        self.choices: Dict[str, int] = {}
        self.payloads: Dict[str, AuditPayloadType] = {}
        self.acknowledgements: Dict[str, AcknowledgementType] = {}

    @property
    def election_pk(self) -> int:
        return self.election_keys.public_key

    def make_client(self, vid: str, label: str = "client") -> VoterClientAgent:
        return VoterClientAgent(
            vid,
            self.codebook,
            self.election_pk,
            self.server.verification_key,
            rng=self.rng.fork(f"{label}/{vid}"),
            log=self.log,
            baseline=self.settings.baseline,
        )

    # ------------------------------------------------------------------
    # Registration
    # ------------------------------------------------------------------

    def register(self, before_delivery: Optional[Callable[[RegistrarAgent], None]] = None) -> None:
        """
        Generate and deliver credentials for every voter.

        ``before_delivery`` runs between generation and delivery; adversarial
        scenarios use it to tamper with the registrar.
        """
        with stage("register"):
            for vid in self.vids:
                self.registrar.generate_credentials(vid)
            if before_delivery is not None:
                before_delivery(self.registrar)

        with stage("deliver"):
            for vid in self.vids:
                self.clients[vid] = self.make_client(vid)

            if self.settings.mode == DeliveryModeEnum.DIRECT:
                for vid in self.vids:
                    self.registrar.deliver_and_erase(vid)
                    self.clients[vid].receive(self.channel)
                    self.clients[vid].set_login(self.server.enroll_voter(vid))
            else:
                for vid in self.vids:
                    self.registrar.provision_passcode_mode(vid)
                tokens = self.server.receive_provisioning()
                for vid in self.vids:
                    self.clients[vid].receive(self.channel)
                    self.clients[vid].set_second_factor(tokens.get(vid))

    def publish(self) -> List[RegistryRecordType]:
        with stage("publish"):
            self.registrar.close_registration()
            self.registry = self.registrar.publish_registry(
                order_policy=self.settings.order, shuffle_seed=self.settings.seed
            )
            self.server.load_registry(self.registry)
            # Passcode clients learn (p, rho) only when they unseal
            if self.settings.mode == DeliveryModeEnum.DIRECT:
                for vid in self.vids:
                    self.clients[vid].check_registry(self.registry)
        return self.registry

    def setup(self) -> None:
        self.register()
        self.publish()

    # ------------------------------------------------------------------
    # Casting
    # ------------------------------------------------------------------

    def choice_for(self, vid: str) -> int:
        return self.rng.fork(f"choices/{vid}").randbelow(self.settings.choices)

    def cast_one(self, vid: str, choice_index: Optional[int] = None) -> Tuple[AcknowledgementType, AuditPayloadType]:
        choice_index = self.choice_for(vid) if choice_index is None else choice_index
        client = self.clients[vid]
        with stage("cast"):
            if self.settings.mode == DeliveryModeEnum.DIRECT:
                acknowledgement, payload = client.cast(self.server, choice_index)
            else:
                acknowledgement, payload = client.passcode_cast(self.server, choice_index)
        self.choices[vid] = choice_index
        self.payloads[vid] = payload
        self.acknowledgements[vid] = acknowledgement
        return acknowledgement, payload

    def cast_all(self, vids: Optional[List[str]] = None) -> None:
        """Cast for every voter, concurrently unless disabled; returns once all are done."""
        vids = list(self.vids if vids is None else vids)
        if not self.settings.parallel:
            for vid in vids:
                self.cast_one(vid)
            return
        with ThreadPoolExecutor(max_workers=config.MAX_WORKERS) as executor:
            futures = [executor.submit(self.cast_one, vid) for vid in vids]
            for future in futures:
                future.result()

    def cross_vote(self, attacker: str, package: CredentialPackageType, choice_index: int = 0) -> CastResultType:
        """
        ``attacker`` logs in as themselves and casts a ballot built from
        another voter's credentials.
        """
        login = self.clients[attacker].login_credentials()
        with stage("authenticate"):
            session = self.server.authenticate(login.vid, login.password, login.second_factor)
        ballot, _ = create_ballot(
            package.vid,
            package.secret_key,
            package.opening,
            choice_index,
            self.election_pk,
            self.codebook,
            self.rng.fork(f"cross-vote/{attacker}/{package.vid}"),
            reference=package.reference if self.settings.baseline else None,
        )
        opening = None if self.settings.baseline else package.opening
        try:
            return self.server.validate_and_cast(session, ballot, opening)
        finally:
            self.server.close_session(session)

    # ------------------------------------------------------------------
    # Audit, tally, board
    # ------------------------------------------------------------------

    def audit(self, vid: str, payload: Optional[AuditPayloadType] = None) -> AuditReportType:
        """Audit as ``vid`` with the given payload (default: the voter's own), passed as a QR line."""
        payload = payload or self.payloads[vid]
        qr_line = payload.to_qr_line(self.params.scalar_bytes)
        with stage("audit"):
            return self.second_device.audit(vid, qr_line, self.server, self.clients[vid].login_credentials())

    def audit_all(self) -> List[AuditReportType]:
        return [self.audit(vid) for vid in self.vids if vid in self.payloads]

    def counted_entries(self):
        """Box entries that count: all of them, or the last per rho under last-counts."""
        entries = self.server.export_ballot_box()
        if self.settings.revote == RevotePolicyEnum.LAST_COUNTS:
            last = {entry.ballot.reference.value: entry for entry in entries}
            entries = sorted(last.values(), key=lambda entry: entry.sequence)
        return entries

    def tally(self) -> Dict[int, int]:
        """Trustee decryption of every counted ballot."""
        counts: Counter = Counter()
        with stage("tally"):
            for entry in self.counted_entries():
                message = elgamal_decrypt(self.election_keys.secret_key, entry.ballot.ciphertext, self.params)
                counts[self.codebook.decode(message)] += 1
        return {i: counts.get(i, 0) for i in range(self.settings.choices)}

    def expected_tally(self) -> Dict[int, int]:
        counts = Counter(self.choices.values())
        return {i: counts.get(i, 0) for i in range(self.settings.choices)}

    def registry_text(self) -> str:
        return format_registry(self.registry, self.params, self.settings.order)

    def ballot_box_text(self) -> str:
        return format_ballot_box(self.server.export_ballot_box(), self.params, self.settings.revote)

    def verify_board(self) -> VerificationReportType:
        return verify_eligibility(self.registry_text(), self.ballot_box_text())

    def scan_board(self) -> LeakReportType:
        openings = {vid: payload.opening for vid, payload in self.payloads.items()}
        return scan_privacy_leakage(
            self.registry_text(), self.ballot_box_text(), self.vids, self.params, openings
        )

    def export_artifacts(self, directory: Path) -> Tuple[Path, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        registry_path = directory / REGISTRY_FILE
        box_path = directory / BALLOT_BOX_FILE
        registry_path.write_text(self.registry_text(), encoding="utf-8")
        box_path.write_text(self.ballot_box_text(), encoding="utf-8")
        logger.info("Wrote %s and %s", registry_path, box_path)
        return registry_path, box_path


def format_tally(tally: Dict[int, int]) -> str:
    return ",".join(f"{choice}:{count}" for choice, count in sorted(tally.items()))
