"""
Prime-order group parameters and hashing into the group.

Two profiles are provided:

- ``test-small``: p=23, q=11, g=2, h=3 with the trapdoor alpha=8 (2^8 = 3 mod 23).
  Small enough to enumerate every commitment opening; the trapdoor makes
  equivocation computable.
- ``production``: the 2048-bit MODP safe prime of RFC 3526 (group 14) with
  q=(p-1)/2, g=4 and h derived by hashing a public seed string into the
  subgroup. Nobody knows log_g(h); this profile carries no trapdoor.
"""

import hashlib
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from errors import GroupMembershipError
from schemas.enums import ProfileEnum


# Domain-separation tags, one per hash use site
IDENTITY_TAG = b"evercred/h2s/identity/v1"
SIGNATURE_CHALLENGE_TAG = b"evercred/h2s/schnorr-challenge/v1"
SIGNATURE_NONCE_TAG = b"evercred/h2s/schnorr-nonce/v1"
PRODUCTION_H_SEED = b"evercred/production/generator-h/v1"

# Extra bytes squeezed beyond the modulus size so reduction bias is negligible
_HASH_EXPANSION_BYTES = 16

RFC3526_MODP_2048 = int(
    """
    FFFFFFFF FFFFFFFF C90FDAA2 2168C234 C4C6628B 80DC1CD1
    29024E08 8A67CC74 020BBEA6 3B139B22 514A0879 8E3404DD
    EF9519B3 CD3A431B 302B0A6D F25F1437 4FE1356D 6D51C245
    E485B576 625E7EC6 F44C42E9 A637ED6B 0BFF5CB6 F406B7ED
    EE386BFB 5A899FA5 AE9F2411 7C4B1FE6 49286651 ECE45B3D
    C2007CB8 A163BF05 98DA4836 1C55D39A 69163FA8 FD24CF5F
    83655D23 DCA3AD96 1C62F356 208552BB 9ED52907 7096966D
    670C354E 4ABC9804 F1746C08 CA18217C 32905E46 2E36CE3B
    E39E772C 180E8603 9B2783A2 EC07A28F B5C55DF0 6F4C52C9
    DE2BCBF6 95581718 3995497C EA956AE5 15D22618 98FA0510
    15728E5A 8AACAA68 FFFFFFFF FFFFFFFF
    """.replace(" ", "").replace("\n", ""),
    16,
)


class GroupParams(BaseModel):
    """
    Order-q subgroup of Z_p^* with two independent generators g and h.

    ``trapdoor`` (alpha with g^alpha = h) is only ever set on test profiles.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    p: int
    q: int
    g: int
    h: int
    trapdoor: Optional[int] = None

    @model_validator(mode="after")
    def _check_generators(self) -> "GroupParams":
        if not 1 < self.q < self.p:
            raise ValueError("need 1 < q < p")
        if (self.p - 1) % self.q != 0:
            raise ValueError("q must divide p - 1")
        for label, value in (("g", self.g), ("h", self.h)):
            if value == 1 or not self.is_member(value):
                raise ValueError(f"generator {label} is not a non-identity subgroup element")
        if self.trapdoor is not None and pow(self.g, self.trapdoor, self.p) != self.h:
            raise ValueError("trapdoor does not satisfy g^alpha = h")
        return self

    @property
    def element_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def scalar_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8

    @property
    def has_trapdoor(self) -> bool:
        return self.trapdoor is not None

    def is_member(self, value: int) -> bool:
        """True iff value is an element of the order-q subgroup."""
        if not isinstance(value, int) or not 0 < value < self.p:
            return False
        return pow(value, self.q, self.p) == 1

    def require_member(self, value: int, what: str = "element") -> int:
        if not self.is_member(value):
            raise GroupMembershipError(f"{what} is not in the order-q subgroup")
        return value

    def exp(self, base: int, exponent: int) -> int:
        return pow(base, exponent % self.q, self.p)

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def reduce(self, scalar: int) -> int:
        return scalar % self.q

    def public_view(self) -> "GroupParams":
        """Same group without the trapdoor, safe to publish."""
        return self.model_copy(update={"trapdoor": None})


def _expand(tag: bytes, data: bytes, length: int) -> bytes:
    # Length-prefixed tag so (tag, data) pairs cannot collide across sites
    shake = hashlib.shake_256()
    shake.update(len(tag).to_bytes(2, "big"))
    shake.update(tag)
    shake.update(data)
    return shake.digest(length)


def hash_to_scalar(data: bytes, params: GroupParams, tag: bytes = IDENTITY_TAG) -> int:
    """
    Map a byte string to Z_q.

    SHAKE-256 over (len(tag) || tag || data), squeezed to |q| + 128 bits and
    reduced mod q. Deterministic and platform independent.
    """
    digest = _expand(tag, data, params.scalar_bytes + _HASH_EXPANSION_BYTES)
    return int.from_bytes(digest, "big") % params.q


def hash_identity(vid: str, params: GroupParams) -> int:
    """The scalar committed to for a voter identifier."""
    return hash_to_scalar(vid.encode("utf-8"), params, tag=IDENTITY_TAG)


def hash_to_group(seed: bytes, p: int, q: int) -> int:
    """
    Nothing-up-my-sleeve subgroup element from a public seed.

    For counter = 0, 1, ...: x = SHAKE-256(seed || counter) mod p, then raise to
    the cofactor (p-1)/q; the first result different from 1 is returned.
    """
    cofactor = (p - 1) // q
    length = (p.bit_length() + 7) // 8 + _HASH_EXPANSION_BYTES
    counter = 0
    while True:
        x = int.from_bytes(_expand(seed, counter.to_bytes(4, "big"), length), "big") % p
        candidate = pow(x, cofactor, p)
        if candidate not in (0, 1):
            return candidate
        counter += 1


@lru_cache(maxsize=None)
def load_profile(profile: str) -> GroupParams:
    """Build the parameter set for a profile name."""
    profile = ProfileEnum(profile)
    if profile == ProfileEnum.TEST_SMALL:
        return GroupParams(name=profile.value, p=23, q=11, g=2, h=3, trapdoor=8)

    p = RFC3526_MODP_2048
    q = (p - 1) // 2
    return GroupParams(
        name=profile.value,
        p=p,
        q=q,
        g=4,
        h=hash_to_group(PRODUCTION_H_SEED, p, q),
    )
