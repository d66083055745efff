"""
Modular ballot checks run by the voting server on every cast.
Add or modify checks here without touching the server itself.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from primitives.commitment import verify_identity_opening
from primitives.encoding import encode_ballot_message
from primitives.group import GroupParams
from primitives.signature import verify
from schemas import BallotType, RejectionReasonEnum, RevotePolicyEnum, Secret


class CastContext(BaseModel):
    """Everything a check may look at for one cast."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: GroupParams
    vid: str
    ballot: BallotType
    opening: Optional[Secret]
    registry_keys: List[int] = []  # p of every record with this rho
    vid_has_voted: bool = False
    reference_used: bool = False
    revote_policy: RevotePolicyEnum = RevotePolicyEnum.FORBIDDEN


class BallotCheck:
    """Base class for ballot checks."""

    reason: RejectionReasonEnum = RejectionReasonEnum.GENERIC_FAILURE

    def check(self, ctx: CastContext) -> bool:
        """
        Args:
            ctx: Cast context

        Returns:
            True if the ballot passes this check
        """
        raise NotImplementedError


class WellFormednessCheck(BallotCheck):
    """All group elements of the ballot lie in the subgroup."""

    reason = RejectionReasonEnum.MALFORMED_BALLOT

    def check(self, ctx: CastContext) -> bool:
        ct = ctx.ballot.ciphertext
        return all(
            ctx.params.is_member(x)
            for x in (ct.c1, ct.c2, ctx.ballot.reference.value)
        )


class CommitmentCheck(BallotCheck):
    """rho == Comm(H(vid), t) for the authenticated vid."""

    reason = RejectionReasonEnum.COMMITMENT_MISMATCH

    def check(self, ctx: CastContext) -> bool:
        if ctx.opening is None or ctx.opening.destroyed:
            return False
        opening = ctx.opening.reveal()
        if not isinstance(opening, int):
            return False
        return verify_identity_opening(ctx.ballot.reference, ctx.vid, opening, ctx.params)


class ReferenceCheck(BallotCheck):
    """Some registry record (p, rho) carries exactly this rho."""

    reason = RejectionReasonEnum.UNKNOWN_REFERENCE

    def check(self, ctx: CastContext) -> bool:
        return bool(ctx.registry_keys)


class SignatureCheck(BallotCheck):
    """sigma verifies over (c, rho) under the p taken from the registry."""

    reason = RejectionReasonEnum.BAD_SIGNATURE

    def check(self, ctx: CastContext) -> bool:
        message = encode_ballot_message(ctx.ballot.ciphertext, ctx.ballot.reference, ctx.params)
        return any(
            verify(public_key, message, ctx.ballot.signature, ctx.params)
            for public_key in ctx.registry_keys
        )


class RevoteCheck(BallotCheck):
    """Under ``forbidden``: one entry per rho and per vid."""

    reason = RejectionReasonEnum.REVOTE_FORBIDDEN

    def check(self, ctx: CastContext) -> bool:
        if ctx.revote_policy == RevotePolicyEnum.LAST_COUNTS:
            return True
        return not (ctx.vid_has_voted or ctx.reference_used)


# Registry of all checks (order decides which reason is reported first)
BALLOT_CHECKS: List[BallotCheck] = [
    WellFormednessCheck(),
    CommitmentCheck(),
    ReferenceCheck(),
    SignatureCheck(),
    RevoteCheck(),
]

# Plain anonymous credentials: no reference opening, no commitment check
BASELINE_BALLOT_CHECKS: List[BallotCheck] = [
    check for check in BALLOT_CHECKS if not isinstance(check, CommitmentCheck)
]


def validate_ballot(
    ctx: CastContext, checks: Optional[List[BallotCheck]] = None
) -> Tuple[bool, Optional[RejectionReasonEnum]]:
    """
    Run the checks in order and stop at the first failure.

    Args:
        ctx: Cast context
        checks: Checks to run (defaults to BALLOT_CHECKS)

    Returns:
        Tuple of (accepted, rejection_reason)
    """
    for check in BALLOT_CHECKS if checks is None else checks:
        if not check.check(ctx):
            return False, check.reason
    return True, None
