from .formats import (
    format_ballot_box,
    format_registry,
    parse_ballot_box,
    parse_registry,
)
from .verifier import scan_privacy_leakage, verify_eligibility

__all__ = [
    "format_registry",
    "format_ballot_box",
    "parse_registry",
    "parse_ballot_box",
    "verify_eligibility",
    "scan_privacy_leakage",
]
