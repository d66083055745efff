"""
Voter Client - ballot creation, casting and the audit payload.
"""

from .agent import VoterClientAgent, ballot_fingerprint, create_ballot

__all__ = ["VoterClientAgent", "ballot_fingerprint", "create_ballot"]
