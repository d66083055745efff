"""
Exception hierarchy shared by every actor of the simulator.
"""

from typing import Optional


class EvercredError(Exception):
    """Base class for all simulator errors."""


# ============================================================================
# CRYPTOGRAPHIC PRIMITIVES
# ============================================================================

class GroupMembershipError(EvercredError):
    """A value is not an element of the prime-order subgroup."""


class TrapdoorUnavailableError(EvercredError):
    """Equivocation requested on a parameter set without a trapdoor."""


class MalformedCiphertextError(EvercredError):
    """Ciphertext components lie outside the subgroup."""


class IntegrityError(EvercredError):
    """Authenticated decryption failed (wrong key or tampered blob)."""


# ============================================================================
# REGISTRATION
# ============================================================================

class RegistrationError(EvercredError):
    pass


class DuplicateVoterError(RegistrationError):
    pass


class IdentityCollisionError(RegistrationError):
    """Two voter identifiers hash to the same scalar (toy groups only)."""


class UnknownVoterError(RegistrationError):
    pass


class SecretsErasedError(RegistrationError):
    def __init__(self, vid: str):
        super().__init__(f"secrets erased for voter '{vid}'")
        self.vid = vid


class PhaseError(RegistrationError):
    pass


class ModeMismatchError(EvercredError):
    pass


class AdversarialModeError(EvercredError):
    """Adversarial operation called on an honest actor."""


# ============================================================================
# VOTING SERVER
# ============================================================================

class AuthenticationError(EvercredError):
    # Same message for every cause so callers cannot enumerate voters.
    def __init__(self):
        super().__init__("authentication failed")


class InvalidSessionError(EvercredError):
    pass


class NoBallotCastError(EvercredError):
    pass


class NoRecordError(EvercredError):
    pass


# ============================================================================
# CLIENT / AUDIT
# ============================================================================

class BallotRejectedError(EvercredError):
    def __init__(self, reason: str):
        super().__init__(f"ballot rejected: {reason}")
        self.reason = reason


class InvalidReceiptError(EvercredError):
    pass


class RegistryMismatchError(EvercredError):
    pass


class PayloadParseError(EvercredError):
    pass


class InvalidChoiceError(EvercredError):
    pass


class SecretDestroyedError(EvercredError):
    pass


# ============================================================================
# HARNESS
# ============================================================================

class ScenarioError(EvercredError):
    def __init__(self, stage: str, message: Optional[str] = None):
        super().__init__(f"stage '{stage}' failed" + (f": {message}" if message else ""))
        self.stage = stage


class UnknownScenarioError(EvercredError):
    pass
