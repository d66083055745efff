"""
Pedersen commitments Comm(x, r) = g^x h^r.

Perfectly hiding: for every x' there is exactly one r' opening a given
commitment to x'. Computationally binding: finding two openings to different
x requires log_g(h). On the test profile log_g(h) is known (the trapdoor) and
``equivocate`` computes the other openings explicitly.

No operation here combines commitments.
"""

from typing import Dict, List, Tuple

from errors import TrapdoorUnavailableError
from primitives.group import GroupParams, hash_identity
from schemas.types import CommitmentType

# Enumerating all openings costs q^2 exponentiations
MAX_ENUMERABLE_ORDER = 1 << 12


def commit(x: int, r: int, params: GroupParams) -> CommitmentType:
    """Return g^x * h^r; inputs are reduced mod q first."""
    value = params.mul(params.exp(params.g, x), params.exp(params.h, r))
    return CommitmentType(value=value)


def commit_identity(vid: str, opening: int, params: GroupParams) -> CommitmentType:
    """Anonymized voter reference: Comm(H(vid), t)."""
    return commit(hash_identity(vid, params), opening, params)


def verify_commitment(reference: CommitmentType, x: int, r: int, params: GroupParams) -> bool:
    return reference.value == commit(x, r, params).value


def verify_identity_opening(
    reference: CommitmentType, vid: str, opening: int, params: GroupParams
) -> bool:
    """The check both the voting server and the second device perform."""
    return verify_commitment(reference, hash_identity(vid, params), opening, params)


def equivocate(
    reference: CommitmentType,
    x_orig: int,
    t_orig: int,
    x_target: int,
    params: GroupParams,
) -> int:
    """
    Opening of ``reference`` to ``x_target`` using the trapdoor.

    t* = t_orig + (x_orig - x_target) * alpha^-1 mod q.

    Raises:
        TrapdoorUnavailableError: the parameter set has no trapdoor
        ValueError: (x_orig, t_orig) does not open ``reference``
    """
    if not params.has_trapdoor:
        raise TrapdoorUnavailableError(f"profile '{params.name}' has no trapdoor")
    if not verify_commitment(reference, x_orig, t_orig, params):
        raise ValueError("original opening does not match the commitment")

    alpha_inv = pow(params.trapdoor, -1, params.q)
    return (t_orig + (x_orig - x_target) * alpha_inv) % params.q


def enumerate_openings(params: GroupParams) -> Dict[int, List[Tuple[int, int]]]:
    """
    Brute-force table commitment value -> all (x, r) pairs opening it.

    Only feasible on toy groups; this is what an unbounded adversary can compute.
    """
    if params.q > MAX_ENUMERABLE_ORDER:
        raise ValueError(f"group order too large to enumerate ({params.q.bit_length()} bits)")

    table: Dict[int, List[Tuple[int, int]]] = {}
    for x in range(params.q):
        for r in range(params.q):
            table.setdefault(commit(x, r, params).value, []).append((x, r))
    return table
