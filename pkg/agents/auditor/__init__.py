"""
Second Device - clash check, plaintext display and receipt verification.
"""

from .agent import SecondDeviceAgent, verify_receipt

__all__ = ["SecondDeviceAgent", "verify_receipt"]
