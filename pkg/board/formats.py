"""
Public artifact formats.

Registry::

    # evercred-registry v1
    # profile=test-small
    # p=<hex>  q=<hex>  g=<hex>  h=<hex>   (one per line)
    # order=sorted
    <p_hex>,<rho_hex>

Ballot box::

    # evercred-ballot-box v1
    # profile=test-small
    # revote=forbidden
    <seq>,<c1_hex>,<c2_hex>,<rho_hex>,<sigma_hex>

Elements are fixed-width big-endian hex; sigma is the canonical signature
encoding. Neither file carries a voter identifier, an opening or a timestamp.
"""

import string
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from primitives.encoding import decode_signature, element_hex, encode_signature
from primitives.group import GroupParams
from schemas import (
    BallotBoxEntryType,
    BallotType,
    CiphertextType,
    CommitmentType,
    OrderPolicyEnum,
    RegistryRecordType,
    RevotePolicyEnum,
    ViolationKindEnum,
    ViolationType,
)

REGISTRY_HEADER = "# evercred-registry v1"
BALLOT_BOX_HEADER = "# evercred-ballot-box v1"

GROUP_FIELDS = ("p", "q", "g", "h")

HEX_DIGITS = frozenset(string.hexdigits)


class PublishedRegistryType(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: Optional[GroupParams] = None
    order: str = OrderPolicyEnum.SORTED.value
    records: List[RegistryRecordType] = []
    errors: List[ViolationType] = []


class PublishedBallotType(BaseModel):
    sequence: int
    ballot: BallotType


class PublishedBallotBoxType(BaseModel):
    profile: str = ""
    revote: RevotePolicyEnum = RevotePolicyEnum.FORBIDDEN
    entries: List[PublishedBallotType] = []
    errors: List[ViolationType] = []


# ----------------------------------------------------------------------
# Writers
# ----------------------------------------------------------------------

def format_registry(
    records: List[RegistryRecordType],
    params: GroupParams,
    order: OrderPolicyEnum = OrderPolicyEnum.SORTED,
) -> str:
    public = params.public_view()
    lines = [REGISTRY_HEADER, f"# profile={public.name}"]
    lines += [f"# {name}={getattr(public, name):x}" for name in GROUP_FIELDS]
    lines.append(f"# order={OrderPolicyEnum(order).value}")
    lines += [
        f"{element_hex(r.public_key, params)},{element_hex(r.reference.value, params)}"
        for r in records
    ]
    return "\n".join(lines) + "\n"


def format_ballot_box(
    entries: List[BallotBoxEntryType],
    params: GroupParams,
    revote: RevotePolicyEnum = RevotePolicyEnum.FORBIDDEN,
) -> str:
    lines = [BALLOT_BOX_HEADER, f"# profile={params.name}", f"# revote={RevotePolicyEnum(revote).value}"]
    for entry in entries:
        ballot = entry.ballot
        lines.append(",".join([
            str(entry.sequence),
            element_hex(ballot.ciphertext.c1, params),
            element_hex(ballot.ciphertext.c2, params),
            element_hex(ballot.reference.value, params),
            encode_signature(ballot.signature, params).hex(),
        ]))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Parsers
# ----------------------------------------------------------------------

def _header_fields(lines: List[str]) -> Dict[str, str]:
    fields = {}
    for line in lines:
        if line.startswith("#") and "=" in line:
            key, _, value = line[1:].strip().partition("=")
            fields[key.strip()] = value.strip()
    return fields


def _parse_error(line_no: int, detail: str) -> ViolationType:
    return ViolationType(entry=line_no, kind=ViolationKindEnum.PARSE_ERROR, detail=detail)


def _check_hex(text: str, what: str) -> str:
    # int(text, 16) alone takes signs, "0x" and "_"; bytes.fromhex takes spaces
    if not text or not set(text) <= HEX_DIGITS:
        raise ValueError(f"{what} must be unsigned hex")
    return text


def _parse_hex(text: str, what: str, bound: Optional[int] = None) -> int:
    value = int(_check_hex(text, what), 16)
    if bound is not None and value >= bound:
        raise ValueError(f"{what} out of range")
    return value


def _parse_sequence(text: str) -> int:
    if not (text.isascii() and text.isdigit()):
        raise ValueError("sequence must be a decimal number")
    return int(text)


def _data_lines(text: str) -> List[Tuple[int, str]]:
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]


def parse_registry(text: str) -> PublishedRegistryType:
    """Parse a registry file; malformed lines become per-line parse errors."""
    lines = text.splitlines()
    registry = PublishedRegistryType()
    if not lines or lines[0].strip() != REGISTRY_HEADER:
        registry.errors.append(_parse_error(1, "missing registry header"))
        return registry

    fields = _header_fields(lines)
    try:
        registry.params = GroupParams(
            name=fields.get("profile", "unknown"),
            **{name: _parse_hex(fields[name], name) for name in GROUP_FIELDS},
        )
    except (KeyError, ValueError) as e:
        registry.errors.append(_parse_error(1, f"bad group parameters: {e}"))
        return registry
    registry.order = fields.get("order", registry.order)

    for number, line in _data_lines(text):
        parts = line.split(",")
        if len(parts) != 2:
            registry.errors.append(_parse_error(number, "expected p_hex,rho_hex"))
            continue
        try:
            registry.records.append(RegistryRecordType(
                public_key=_parse_hex(parts[0], "public key", registry.params.p),
                reference=CommitmentType(value=_parse_hex(parts[1], "reference", registry.params.p)),
            ))
        except ValueError as e:
            registry.errors.append(_parse_error(number, str(e)))
    return registry


def parse_ballot_box(text: str, params: GroupParams) -> PublishedBallotBoxType:
    """Parse a ballot box export against the registry's group parameters."""
    lines = text.splitlines()
    box = PublishedBallotBoxType()
    if not lines or lines[0].strip() != BALLOT_BOX_HEADER:
        box.errors.append(_parse_error(1, "missing ballot box header"))
        return box

    fields = _header_fields(lines)
    box.profile = fields.get("profile", "")
    try:
        box.revote = RevotePolicyEnum(fields.get("revote", RevotePolicyEnum.FORBIDDEN.value))
    except ValueError:
        box.errors.append(_parse_error(1, f"unknown revote policy '{fields.get('revote')}'"))

    for number, line in _data_lines(text):
        parts = line.split(",")
        if len(parts) != 5:
            box.errors.append(_parse_error(number, "expected seq,c1_hex,c2_hex,rho_hex,sigma_hex"))
            continue
        try:
            ballot = BallotType(
                ciphertext=CiphertextType(
                    c1=_parse_hex(parts[1], "c1", params.p),
                    c2=_parse_hex(parts[2], "c2", params.p),
                ),
                reference=CommitmentType(value=_parse_hex(parts[3], "reference", params.p)),
                signature=decode_signature(bytes.fromhex(_check_hex(parts[4], "signature")), params),
            )
            box.entries.append(PublishedBallotType(sequence=_parse_sequence(parts[0]), ballot=ballot))
        except ValueError as e:
            box.errors.append(_parse_error(number, str(e)))
    return box
