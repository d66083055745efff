from .types import (
    CommitmentType,
    CiphertextType,
    SignatureType,
    ElGamalKeypairType,
    SigningKeypairType,
    DerivedSecretsType,
    SealedCredentialsType,
    PasswordHashType,
)
from .credentials import (
    VoterId,
    RegistryRecordType,
    VoterCredentialsType,
    CredentialPackageType,
    PasscodeDeliveryType,
    ServerProvisioningRecordType,
    LoginCredentialsType,
    AuthRecordType,
    DeliveryEventType,
)
from .ballot import (
    BallotType,
    BallotBoxEntryType,
    AcknowledgementType,
    CastResultType,
    AuditPayloadType,
)
from .session import SessionType
from .secret import Secret, scan_for_values
from .events import SimulationEventType, SimulationLog
from .reports import (
    AuditReportType,
    ViolationType,
    VerificationReportType,
    LeakFindingType,
    LeakReportType,
    AssertionType,
    ScenarioReportType,
    ElectionReportType,
    EquivocationReportType,
    StuffingCellType,
    MatrixReportType,
)
from .enums import (
    ProfileEnum,
    DeliveryModeEnum,
    RevotePolicyEnum,
    OrderPolicyEnum,
    RegistrationPhaseEnum,
    RejectionReasonEnum,
    ServerBehaviorEnum,
    CompromiseEnum,
    VerdictEnum,
    ScenarioKindEnum,
    ViolationKindEnum,
)

__all__ = [
    "CommitmentType",
    "CiphertextType",
    "SignatureType",
    "ElGamalKeypairType",
    "SigningKeypairType",
    "DerivedSecretsType",
    "SealedCredentialsType",
    "PasswordHashType",
    "VoterId",
    "RegistryRecordType",
    "VoterCredentialsType",
    "CredentialPackageType",
    "PasscodeDeliveryType",
    "ServerProvisioningRecordType",
    "LoginCredentialsType",
    "AuthRecordType",
    "DeliveryEventType",
    "BallotType",
    "BallotBoxEntryType",
    "AcknowledgementType",
    "CastResultType",
    "AuditPayloadType",
    "SessionType",
    "Secret",
    "scan_for_values",
    "SimulationEventType",
    "SimulationLog",
    "AuditReportType",
    "ViolationType",
    "VerificationReportType",
    "LeakFindingType",
    "LeakReportType",
    "AssertionType",
    "ScenarioReportType",
    "ElectionReportType",
    "EquivocationReportType",
    "StuffingCellType",
    "MatrixReportType",
    "ProfileEnum",
    "DeliveryModeEnum",
    "RevotePolicyEnum",
    "OrderPolicyEnum",
    "RegistrationPhaseEnum",
    "RejectionReasonEnum",
    "ServerBehaviorEnum",
    "CompromiseEnum",
    "VerdictEnum",
    "ScenarioKindEnum",
    "ViolationKindEnum",
]
