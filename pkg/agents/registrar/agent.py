"""
Registrar - credential and registry generation.

For every voter the registrar samples a signing key s (public key p) and a
reference opening t, computes the anonymized reference rho = Comm(H(vid), t),
delivers the secrets over the confidential channel and erases them. When the
registration phase is over the records (p, rho) are published without any
voter identifier.

Phases: open -> closed -> published.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

import config
from errors import (
    AdversarialModeError,
    DuplicateVoterError,
    IdentityCollisionError,
    ModeMismatchError,
    PhaseError,
    RegistrationError,
    SecretsErasedError,
    UnknownVoterError,
)
from primitives.commitment import commit
from primitives.encoding import element_hex
from primitives.group import GroupParams, hash_identity
from primitives.passcode import derive_from_passcode, generate_passcode, hash_password, seal
from primitives.randomness import RandomSource
from primitives.signature import signing_keygen
from schemas import (
    CredentialPackageType,
    DeliveryEventType,
    DeliveryModeEnum,
    OrderPolicyEnum,
    PasscodeDeliveryType,
    RegistrationPhaseEnum,
    RegistryRecordType,
    ServerProvisioningRecordType,
    SimulationLog,
    VoterCredentialsType,
)
from .channel import SERVER_RECIPIENT, ConfidentialChannel

logger = logging.getLogger(__name__)

ACTOR = "registrar"


class RegistrarAgent:
    """
    Single-owner stateful registrar; every mutation goes through its methods.

    Args:
        params: Group parameters
        rng: Randomness source (seeded in simulations)
        channel: Confidential channel to voters and server
        delivery_mode: Direct delivery of (s, t) or passcode delivery
        retain_secrets: Keep secrets after delivery until the phase closes
        adversarial: Enables misbehave_* operations
        unique_references: Resample t so no two records share rho
    """

    def __init__(
        self,
        params: GroupParams,
        rng: Optional[RandomSource] = None,
        channel: Optional[ConfidentialChannel] = None,
        log: Optional[SimulationLog] = None,
        delivery_mode: DeliveryModeEnum = DeliveryModeEnum.DIRECT,
        retain_secrets: bool = False,
        adversarial: bool = False,
        unique_references: bool = True,
    ):
        self.params = params
        self.rng = rng or RandomSource()
        self.log = log if log is not None else SimulationLog()
        self.channel = channel or ConfidentialChannel(self.log)
        self.delivery_mode = DeliveryModeEnum(delivery_mode)
        self.retain_secrets = retain_secrets
        self.adversarial = adversarial
        self.unique_references = unique_references

        self.phase = RegistrationPhaseEnum.OPEN
        self._secret_store: Dict[str, VoterCredentialsType] = {}
        self._records: Dict[str, RegistryRecordType] = {}
        self._identity_hashes: Dict[int, str] = {}
        self._delivered: set = set()
        self._pinned: set = set()
        self._published: List[RegistryRecordType] = []

        self.log.record(
            ACTOR,
            "trust_assumption",
            detail="voter authentication during delivery is an assumed-secure primitive",
        )

    # ------------------------------------------------------------------
    # Credential generation
    # ------------------------------------------------------------------

    def _require_phase(self, phase: RegistrationPhaseEnum) -> None:
        if self.phase != phase:
            raise PhaseError(f"registrar is {self.phase.value}, expected {phase.value}")

    def _opening_candidates(self, vid: str) -> Iterator[int]:
        stream = self.rng.fork(f"credentials/{vid}/opening")
        for _ in range(config.MAX_REFERENCE_ATTEMPTS):
            yield stream.randbelow(self.params.q)

    def _settle_references(self) -> None:
        """
        Assign t to every voter whose credentials have not left the registrar,
        in vid order, skipping candidates whose rho is already taken. Delivered
        and duplicated credentials keep theirs. The outcome depends only on the
        set of pending voters, never on the order they registered in.
        """
        pending = sorted(
            vid for vid in self._secret_store if vid not in self._delivered and vid not in self._pinned
        )
        taken = {record.reference.value for vid, record in self._records.items() if vid not in pending}
        settled: Dict[str, VoterCredentialsType] = {}
        for vid in pending:
            identity = hash_identity(vid, self.params)
            for opening in self._opening_candidates(vid):
                reference = commit(identity, opening, self.params)
                if not self.unique_references or reference.value not in taken:
                    break
            else:
                raise RegistrationError("could not sample a unique reference; group too small for this roll")
            taken.add(reference.value)
            settled[vid] = self._secret_store[vid].model_copy(update={"opening": opening, "reference": reference})

        for vid, credentials in settled.items():
            self._secret_store[vid] = credentials
            self._records[vid] = credentials.registry_record()

    def generate_credentials(self, vid: str) -> VoterCredentialsType:
        """
        Generate (s, p, t, rho) for a new voter.

        A clash on rho may move t for any voter still awaiting delivery, so
        values returned earlier for those voters can be stale; deliveries
        always carry the settled credentials.

        Raises:
            DuplicateVoterError: vid already registered
            IdentityCollisionError: H(vid) equals the hash of a registered vid
            PhaseError: registration is not open
        """
        self._require_phase(RegistrationPhaseEnum.OPEN)
        if not vid:
            raise RegistrationError("voter identifier must be nonempty")
        if vid in self._records:
            raise DuplicateVoterError(f"voter '{vid}' is already registered")

        identity = hash_identity(vid, self.params)
        if identity in self._identity_hashes:
            raise IdentityCollisionError(
                f"H('{vid}') collides with a registered identifier in group '{self.params.name}'"
            )

        # Per-voter stream: credentials do not depend on registration order
        keypair = signing_keygen(self.params, self.rng.fork(f"credentials/{vid}"))
        opening = next(self._opening_candidates(vid))
        credentials = VoterCredentialsType(
            vid=vid,
            secret_key=keypair.secret_key,
            public_key=keypair.public_key,
            opening=opening,
            reference=commit(identity, opening, self.params),
        )

        self._secret_store[vid] = credentials
        self._records[vid] = credentials.registry_record()
        try:
            self._settle_references()
        except RegistrationError:
            del self._secret_store[vid], self._records[vid]
            raise
        self._identity_hashes[identity] = vid
        self.log.record(ACTOR, "credentials_generated", vid=vid)
        return self._secret_store[vid]

    def registered_voters(self) -> List[str]:
        return sorted(self._records)

    # ------------------------------------------------------------------
    # Delivery
    # ------------------------------------------------------------------

    def _take_secrets(self, vid: str) -> VoterCredentialsType:
        if vid not in self._records:
            raise UnknownVoterError(f"voter '{vid}' is not registered")
        if vid not in self._secret_store:
            raise SecretsErasedError(vid)
        return self._secret_store[vid]

    def _erase(self, vid: str) -> None:
        self._secret_store.pop(vid, None)
        self.log.record(ACTOR, "secrets_erased", vid=vid)

    def deliver_and_erase(self, vid: str) -> DeliveryEventType:
        """
        Send (s, t) to the voter and erase the registrar copy.

        With ``retain_secrets`` the copy survives until close_registration(),
        allowing re-delivery; the flag is logged with every delivery.

        Raises:
            UnknownVoterError: vid never registered
            SecretsErasedError: secrets already erased
            ModeMismatchError: registrar runs in passcode mode
        """
        if self.delivery_mode != DeliveryModeEnum.DIRECT:
            raise ModeMismatchError("direct delivery requested in passcode mode")
        credentials = self._take_secrets(vid)

        package = CredentialPackageType(
            vid=vid,
            secret_key=credentials.secret_key,
            opening=credentials.opening,
            public_key=credentials.public_key,
            reference=credentials.reference,
        )
        self.channel.send(vid, package)
        redelivery = vid in self._delivered
        self._delivered.add(vid)
        self.log.record(
            ACTOR, "delivered", vid=vid, retention=self.retain_secrets, redelivery=redelivery
        )

        if not self.retain_secrets:
            self._erase(vid)
        return DeliveryEventType(vid=vid, recipient=vid, kind="credentials", retained=self.retain_secrets)

    def provision_passcode_mode(
        self, vid: str
    ) -> Tuple[PasscodeDeliveryType, ServerProvisioningRecordType]:
        """
        Passcode delivery: tau to the voter, sealed (s, t) and the hashed
        login password to the voting server. tau, k, s and t are erased
        afterwards.

        Raises:
            ModeMismatchError: registrar runs in direct mode
        """
        if self.delivery_mode != DeliveryModeEnum.PASSCODE:
            raise ModeMismatchError("passcode provisioning requested in direct mode")
        credentials = self._take_secrets(vid)

        passcode = generate_passcode(self.rng)
        derived = derive_from_passcode(passcode)
        record = ServerProvisioningRecordType(
            vid=vid,
            password_hash=hash_password(derived.login_password, self.rng),
            sealed=seal(derived.key, credentials.secret_key, credentials.opening, self.params, self.rng),
        )
        delivery = PasscodeDeliveryType(vid=vid, passcode=passcode)

        self.channel.send(vid, delivery)
        self.channel.send(SERVER_RECIPIENT, record)
        self._delivered.add(vid)
        self.log.record(ACTOR, "passcode_provisioned", vid=vid, retention=self.retain_secrets)

        del passcode, derived
        if not self.retain_secrets:
            self._erase(vid)
        return delivery, record

    # ------------------------------------------------------------------
    # Phases and publication
    # ------------------------------------------------------------------

    def close_registration(self) -> None:
        """End of the registration phase; retained secrets are purged now."""
        self._require_phase(RegistrationPhaseEnum.OPEN)
        for vid in list(self._secret_store):
            self._erase(vid)
        self.phase = RegistrationPhaseEnum.CLOSED
        self.log.record(ACTOR, "registration_closed", voters=len(self._records))

    def publish_registry(
        self,
        order_policy: OrderPolicyEnum = OrderPolicyEnum.SORTED,
        shuffle_seed: Optional[int] = None,
    ) -> List[RegistryRecordType]:
        """
        Publish the records (p, rho) without identifiers.

        ``sorted`` orders by the byte encoding of rho; ``shuffled`` uses a PRNG
        seeded with ``shuffle_seed`` (system entropy if None). The vid -> record
        association is dropped afterwards.

        Raises:
            PhaseError: registration still open
        """
        if self.phase == RegistrationPhaseEnum.PUBLISHED:
            return list(self._published)
        self._require_phase(RegistrationPhaseEnum.CLOSED)

        # A duplicated credential appears once
        unique = {(r.public_key, r.reference.value): r for r in self._records.values()}
        records = sorted(
            unique.values(),
            key=lambda r: (element_hex(r.reference.value, self.params), element_hex(r.public_key, self.params)),
        )
        if OrderPolicyEnum(order_policy) == OrderPolicyEnum.SHUFFLED:
            records = RandomSource(shuffle_seed).shuffle(records)

        self._published = records
        self._records.clear()
        self.phase = RegistrationPhaseEnum.PUBLISHED
        self.log.record(ACTOR, "registry_published", records=len(records), order=OrderPolicyEnum(order_policy).value)
        return list(records)

    # ------------------------------------------------------------------
    # Adversarial behavior
    # ------------------------------------------------------------------

    def misbehave_duplicate_credentials(self, vid_a: str, vid_b: str) -> VoterCredentialsType:
        """
        Give voter b exactly voter a's (s, t, rho) and drop b's own record,
        so the registry holds a single shared record.

        Raises:
            AdversarialModeError: registrar is honest
        """
        if not self.adversarial:
            raise AdversarialModeError("duplicate credentials require an adversarial registrar")
        source = self._take_secrets(vid_a)
        self._take_secrets(vid_b)

        self._secret_store[vid_b] = source.model_copy(update={"vid": vid_b})
        self._records[vid_b] = source.registry_record()
        self._pinned.update((vid_a, vid_b))
        self.log.record(ACTOR, "credentials_duplicated", source=vid_a, target=vid_b)
        return source

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def holds_secrets_for(self, vid: str) -> bool:
        return vid in self._secret_store

    def dump_state(self) -> dict:
        """Full state serialization (instrumentation for the erasure checks)."""
        unique_records = {
            (r.public_key, r.reference.value): r for r in self._records.values()
        }
        return {
            "phase": self.phase.value,
            "delivery_mode": self.delivery_mode.value,
            "retain_secrets": self.retain_secrets,
            "secret_store": {vid: c.model_dump() for vid, c in self._secret_store.items()},
            "records": [r.model_dump() for r in unique_records.values()],
            "published": [r.model_dump() for r in self._published],
            "delivered": sorted(self._delivered),
        }
