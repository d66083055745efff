from typing import Optional

from pydantic import BaseModel, ConfigDict

from .secret import Secret


class SessionType(BaseModel):
    """
    Authenticated session on the voting server.

    ``transient_opening`` holds t only while a single validate_and_cast call runs.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    session_id: str
    vid: str
    created_at: float
    transient_opening: Optional[Secret] = None
