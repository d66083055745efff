"""
Simulated confidential channel between the registrar and the voters / server.

Messages are delivered in-process. An adversary may attach a tap, which sees
every message sent after it was attached; no tap is attached by default.
"""

import threading
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from schemas import SimulationLog

Tap = Callable[[str, BaseModel], None]

SERVER_RECIPIENT = "voting-server"


class ConfidentialChannel:
    def __init__(self, log: Optional[SimulationLog] = None):
        self.log = log if log is not None else SimulationLog()
        self._inboxes: Dict[str, List[BaseModel]] = {}
        self._taps: List[Tap] = []
        self._lock = threading.Lock()

    def attach_tap(self, tap: Tap) -> None:
        """Adversary hook: tap(recipient, message) is called on every send."""
        self._taps.append(tap)
        self.log.record("channel", "tap_attached")

    @property
    def tapped(self) -> bool:
        return bool(self._taps)

    def send(self, recipient: str, message: BaseModel) -> None:
        with self._lock:
            self._inboxes.setdefault(recipient, []).append(message)
        for tap in self._taps:
            tap(recipient, message)
        self.log.record("channel", "delivered", recipient=recipient, kind=type(message).__name__)

    def receive(self, recipient: str) -> List[BaseModel]:
        """Pop every message waiting for ``recipient``."""
        with self._lock:
            return self._inboxes.pop(recipient, [])

    def pending(self) -> int:
        with self._lock:
            return sum(len(messages) for messages in self._inboxes.values())
