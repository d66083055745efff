"""
Randomness source: seeded for reproducible simulations, system entropy otherwise.
"""

import hashlib
import os
import random
import secrets
from typing import List, Optional, TypeVar

T = TypeVar("T")


class RandomSource:
    """
    Single entry point for all randomness used by the actors.

    With a seed every draw comes from ``random.Random`` and whole scenarios
    replay bit for bit. Without a seed draws come from ``secrets``/``os.urandom``.
    """

    def __init__(self, seed: Optional[int] = None, label: str = "root"):
        self.seed = seed
        self.label = label
        self._rng = random.Random(seed) if seed is not None else None

    @property
    def deterministic(self) -> bool:
        return self._rng is not None

    def randbelow(self, n: int) -> int:
        if self._rng is None:
            return secrets.randbelow(n)
        return self._rng.randrange(n)

    def nonzero_below(self, n: int) -> int:
        """Uniform in [1, n)."""
        return 1 + self.randbelow(n - 1)

    def token_bytes(self, n: int) -> bytes:
        if self._rng is None:
            return os.urandom(n)
        return self._rng.randbytes(n)

    def shuffle(self, items: List[T]) -> List[T]:
        shuffled = list(items)
        if self._rng is None:
            secrets.SystemRandom().shuffle(shuffled)
        else:
            self._rng.shuffle(shuffled)
        return shuffled

    def fork(self, label: str) -> "RandomSource":
        """
        Independent child stream for one actor.

        Child seeds depend only on (seed, label), never on how many values the
        parent already produced, so actors can run in any order.
        """
        if self.seed is None:
            return RandomSource(None, label)
        digest = hashlib.sha256(f"{self.seed}/{self.label}/{label}".encode("utf-8")).digest()
        return RandomSource(int.from_bytes(digest[:8], "big"), f"{self.label}/{label}")
