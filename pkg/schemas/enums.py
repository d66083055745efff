from enum import Enum


class ProfileEnum(str, Enum):
    TEST_SMALL = "test-small"
    PRODUCTION = "production"


class DeliveryModeEnum(str, Enum):
    DIRECT = "direct"  # s and t delivered to the voter
    PASSCODE = "passcode"  # only tau delivered; sealed s, t kept by the server


class RevotePolicyEnum(str, Enum):
    FORBIDDEN = "forbidden"
    LAST_COUNTS = "last-counts"


class OrderPolicyEnum(str, Enum):
    SHUFFLED = "shuffled"
    SORTED = "sorted"


class RegistrationPhaseEnum(str, Enum):
    OPEN = "open"
    CLOSED = "closed"
    PUBLISHED = "published"


class RejectionReasonEnum(str, Enum):
    MALFORMED_BALLOT = "malformed-ballot"
    COMMITMENT_MISMATCH = "commitment-mismatch"  # cross-voting
    UNKNOWN_REFERENCE = "unknown-reference"
    BAD_SIGNATURE = "bad-signature"
    REVOTE_FORBIDDEN = "revote-forbidden"
    GENERIC_FAILURE = "failure"  # what unauthenticated callers see


class ServerBehaviorEnum(str, Enum):
    HONEST = "honest"
    COLLUDING = "colluding"  # redirects audits, used by the clash scenario


class CompromiseEnum(str, Enum):
    REGISTRAR_ONLY = "registrar-only"
    REGISTRAR_AND_SERVER = "registrar+server"


class VerdictEnum(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class ScenarioKindEnum(str, Enum):
    HONEST_ELECTION = "honest-election"
    CLASH_ATTACK = "clash-attack"
    CROSS_VOTING = "cross-voting"
    BALLOT_STUFFING = "ballot-stuffing"
    EVERLASTING_PRIVACY = "everlasting-privacy"


class ViolationKindEnum(str, Enum):
    UNKNOWN_REFERENCE = "unregistered-reference"
    BAD_SIGNATURE = "bad-signature"
    DUPLICATE_REFERENCE = "duplicate-reference"
    MALFORMED_ELEMENT = "malformed-element"
    PARSE_ERROR = "parse-error"
