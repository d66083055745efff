"""
Universal verification any observer can run on the published artifacts.

Works on the file formats only. Run standalone with::

    python -m board.verifier registry.txt ballot_box.txt

Exit status 0 if no violation was found, 1 otherwise.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from primitives.encoding import encode_ballot_message
from primitives.group import GroupParams, hash_identity
from primitives.signature import verify
from schemas import (
    LeakFindingType,
    LeakReportType,
    RevotePolicyEnum,
    ViolationKindEnum,
    ViolationType,
    VerificationReportType,
    scan_for_values,
)
from .formats import (
    PublishedBallotBoxType,
    PublishedRegistryType,
    parse_ballot_box,
    parse_registry,
)

logger = logging.getLogger(__name__)

# Below this order every scalar shows up in any hex dump by chance
MIN_SCANNABLE_ORDER = 1 << 64


def verify_eligibility(
    registry: Union[str, PublishedRegistryType],
    ballot_box: Union[str, PublishedBallotBoxType],
) -> VerificationReportType:
    """
    Check every published ballot against the published registry.

    Per entry: its rho appears in the registry; c1 and c2 are subgroup
    elements; sigma verifies over (c, rho) under that record's p; and, unless
    revoting is allowed, no earlier entry carries the same rho.

    Args:
        registry: Registry file text or parsed registry
        ballot_box: Ballot box file text or parsed box

    Returns:
        Report listing violations per entry (parse errors per line)
    """
    if isinstance(registry, str):
        registry = parse_registry(registry)
    violations: List[ViolationType] = list(registry.errors)
    if registry.params is None:
        return VerificationReportType(entries_checked=0, registry_records=0, violations=violations)
    params = registry.params

    if isinstance(ballot_box, str):
        ballot_box = parse_ballot_box(ballot_box, params)
    violations += ballot_box.errors

    keys_by_reference: Dict[int, List[int]] = {}
    for record in registry.records:
        keys_by_reference.setdefault(record.reference.value, []).append(record.public_key)

    seen = set()
    for published in ballot_box.entries:
        ballot = published.ballot
        reference = ballot.reference.value
        keys = keys_by_reference.get(reference)
        if not keys:
            violations.append(ViolationType(
                entry=published.sequence,
                kind=ViolationKindEnum.UNKNOWN_REFERENCE,
                detail="reference not in registry",
            ))
        elif not (params.is_member(ballot.ciphertext.c1) and params.is_member(ballot.ciphertext.c2)):
            violations.append(ViolationType(
                entry=published.sequence,
                kind=ViolationKindEnum.MALFORMED_ELEMENT,
                detail="ciphertext component outside the order-q subgroup",
            ))
        else:
            message = encode_ballot_message(ballot.ciphertext, ballot.reference, params)
            if not any(verify(key, message, ballot.signature, params) for key in keys):
                violations.append(ViolationType(
                    entry=published.sequence,
                    kind=ViolationKindEnum.BAD_SIGNATURE,
                    detail="signature does not verify under the registered key",
                ))
        if ballot_box.revote == RevotePolicyEnum.FORBIDDEN and reference in seen:
            violations.append(ViolationType(
                entry=published.sequence,
                kind=ViolationKindEnum.DUPLICATE_REFERENCE,
                detail="reference already used by an earlier entry",
            ))
        seen.add(reference)

    report = VerificationReportType(
        entries_checked=len(ballot_box.entries),
        registry_records=len(registry.records),
        violations=violations,
    )
    logger.info("Verified %d entries, %d violations", report.entries_checked, len(violations))
    return report


def scan_privacy_leakage(
    registry: str,
    ballot_box: str,
    vids: Iterable[str],
    params: GroupParams,
    openings: Optional[Dict[str, int]] = None,
) -> LeakReportType:
    """
    Look for voter-linked data in the published artifacts.

    Vid strings are always searched. Vid hashes and openings are searched
    only when q is large enough for a match to mean something.

    Args:
        registry: Registry file text
        ballot_box: Ballot box file text
        vids: Registered voter identifiers
        params: Group parameters
        openings: Known openings t by vid

    Returns:
        Findings labelled by vid, never by the leaked value
    """
    vids = list(vids)
    scalar_scan = params.q >= MIN_SCANNABLE_ORDER
    widths = [params.scalar_bytes]
    findings: List[LeakFindingType] = []

    for artifact, text in (("registry", registry), ("ballot-box", ballot_box)):
        for vid in scan_for_values(text, vids):
            findings.append(LeakFindingType(artifact=artifact, kind="vid", label=vid))
        if not scalar_scan:
            continue
        hashes = {hash_identity(vid, params): vid for vid in vids}
        for value in scan_for_values(text, hashes, widths):
            findings.append(LeakFindingType(artifact=artifact, kind="vid-hash", label=hashes[value]))
        by_opening = {t: vid for vid, t in (openings or {}).items()}
        for value in scan_for_values(text, by_opening, widths):
            findings.append(LeakFindingType(artifact=artifact, kind="opening", label=by_opening[value]))

    return LeakReportType(findings=findings, scalar_scan_performed=scalar_scan)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="evercred-verify",
        description="Check published ballots against the published registry",
    )
    parser.add_argument("registry", type=Path, help="Registry file")
    parser.add_argument("ballot_box", type=Path, help="Ballot box export")
    args = parser.parse_args(argv)

    report = verify_eligibility(
        args.registry.read_text(encoding="utf-8"),
        args.ballot_box.read_text(encoding="utf-8"),
    )
    print(report.to_json())
    return 0 if report.clean else 1


if __name__ == "__main__":
    sys.exit(main())
