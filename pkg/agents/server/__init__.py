"""
Voting Server - authentication, dual ballot validation and the ballot box.
"""

from .agent import ServerInsider, ServerSettingsType, VotingServerAgent
from .validation_rules import BALLOT_CHECKS, BASELINE_BALLOT_CHECKS, CastContext, validate_ballot

__all__ = [
    "VotingServerAgent",
    "ServerSettingsType",
    "ServerInsider",
    "BALLOT_CHECKS",
    "BASELINE_BALLOT_CHECKS",
    "CastContext",
    "validate_ballot",
]
