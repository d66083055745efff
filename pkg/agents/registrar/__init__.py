"""
Registrar - credential generation, delivery and registry publication.
"""

from .agent import RegistrarAgent
from .channel import ConfidentialChannel, SERVER_RECIPIENT

__all__ = ["RegistrarAgent", "ConfidentialChannel", "SERVER_RECIPIENT"]
