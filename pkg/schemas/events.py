import logging
import threading
from typing import Dict, List, Optional

from pydantic import BaseModel

logger = logging.getLogger("evercred.simulation")


class SimulationEventType(BaseModel):
    sequence: int
    actor: str
    event: str
    details: Dict[str, str] = {}


class SimulationLog:
    """
    Shared, append-only record of protocol events (deliveries, erasures,
    authentication outcomes, casts, audits, trust assumptions).

    Callers must never pass secret values as details.
    """

    def __init__(self):
        self._events: List[SimulationEventType] = []
        self._lock = threading.Lock()

    def record(self, actor: str, event: str, **details) -> SimulationEventType:
        with self._lock:
            entry = SimulationEventType(
                sequence=len(self._events) + 1,
                actor=actor,
                event=event,
                details={k: str(v) for k, v in details.items()},
            )
            self._events.append(entry)
        logger.info("%s %s %s", actor, event, entry.details)
        return entry

    def events(self, actor: Optional[str] = None, event: Optional[str] = None) -> List[SimulationEventType]:
        with self._lock:
            return [
                e for e in self._events
                if (actor is None or e.actor == actor) and (event is None or e.event == event)
            ]

    def __len__(self) -> int:
        return len(self._events)
