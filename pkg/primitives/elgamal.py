"""
ElGamal encryption over the commitment group, plus the choice codebook.

Encryption with an explicit randomness r is deterministic; the second device
relies on this to re-derive the ciphertext from the audit payload.
"""

from typing import List, Optional

from errors import GroupMembershipError, InvalidChoiceError, MalformedCiphertextError
from primitives.group import GroupParams
from primitives.randomness import RandomSource
from schemas.types import CiphertextType, ElGamalKeypairType


def elgamal_keygen(params: GroupParams, rng: RandomSource) -> ElGamalKeypairType:
    secret_key = rng.nonzero_below(params.q)
    return ElGamalKeypairType(secret_key=secret_key, public_key=params.exp(params.g, secret_key))


def elgamal_encrypt(public_key: int, message: int, r: int, params: GroupParams) -> CiphertextType:
    """
    Encrypt a subgroup element: (g^r, m * pk^r).

    Raises:
        GroupMembershipError: message or key outside the subgroup
    """
    params.require_member(public_key, "public key")
    params.require_member(message, "message")
    return CiphertextType(
        c1=params.exp(params.g, r),
        c2=params.mul(message, params.exp(public_key, r)),
    )


def elgamal_decrypt(secret_key: int, ciphertext: CiphertextType, params: GroupParams) -> int:
    if not (params.is_member(ciphertext.c1) and params.is_member(ciphertext.c2)):
        raise MalformedCiphertextError("ciphertext components must be subgroup elements")
    shared = params.exp(ciphertext.c1, secret_key)
    return params.mul(ciphertext.c2, params.inv(shared))


class Codebook:
    """
    Fixed public mapping choice index -> group element: i -> g^(i+1).

    Entries are distinct as long as size < q.
    """

    def __init__(self, params: GroupParams, size: int):
        if not 1 <= size < params.q:
            raise ValueError(f"codebook size must be in [1, {params.q - 1}]")
        self.params = params
        self.size = size
        self.entries: List[int] = [params.exp(params.g, i + 1) for i in range(size)]
        self._index = {element: i for i, element in enumerate(self.entries)}

    def encode(self, choice_index: int) -> int:
        if not isinstance(choice_index, int) or not 0 <= choice_index < self.size:
            raise InvalidChoiceError(f"choice index {choice_index} outside [0, {self.size})")
        return self.entries[choice_index]

    def decode(self, element: int) -> Optional[int]:
        return self._index.get(element)

    def match_encryption(self, public_key: int, r: int, ciphertext: CiphertextType) -> Optional[int]:
        """
        Index of the unique entry m with encrypt(pk, m, r) == ciphertext, if any.

        g^r is fixed by r, so only c2 needs comparing after checking c1.
        """
        try:
            if self.params.exp(self.params.g, r) != ciphertext.c1:
                return None
            matches = [
                i for i, m in enumerate(self.entries)
                if elgamal_encrypt(public_key, m, r, self.params) == ciphertext
            ]
        except GroupMembershipError:
            return None
        return matches[0] if len(matches) == 1 else None
