from .registrar import RegistrarAgent
from .server import VotingServerAgent
from .client import VoterClientAgent
from .auditor import SecondDeviceAgent

__all__ = ["RegistrarAgent", "VotingServerAgent", "VoterClientAgent", "SecondDeviceAgent"]
