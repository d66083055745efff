"""
Honest election: register, publish, cast, audit, verify the board, tally.
"""

from pathlib import Path
from typing import Optional

from schemas import ElectionReportType, ScenarioKindEnum, VerdictEnum
from .harness import ElectionHarness, HarnessSettingsType, format_tally


def run_honest_election(
    settings: Optional[HarnessSettingsType] = None,
    artifact_dir: Optional[Path] = None,
) -> ElectionReportType:
    """
    Args:
        settings: Election settings (voters, mode, 2FA, profile, seed, ...)
        artifact_dir: Write the registry and ballot box here if given

    Returns:
        Report asserting audits, board verification, leakage scan and tally

    Raises:
        ScenarioError: any stage failed; the error names the stage
    """
    settings = settings or HarnessSettingsType()
    harness = ElectionHarness(settings)
    harness.setup()
    harness.cast_all()
    for vid in harness.vids[:settings.revoters]:
        harness.cast_one(vid, (harness.choices[vid] + 1) % settings.choices)
    audits = harness.audit_all()
    verification = harness.verify_board()
    leaks = harness.scan_board()
    tally = harness.tally()
    if artifact_dir is not None:
        harness.export_artifacts(artifact_dir)

    passed = sum(1 for audit in audits if audit.verdict == VerdictEnum.PASS)
    report = ElectionReportType(
        scenario=ScenarioKindEnum.HONEST_ELECTION.value,
        seed=settings.seed,
        parameters=settings.parameters(),
        tally=tally,
        audits=audits,
    )
    report.add_fact("voters", len(harness.vids))
    report.add_fact("registry_records", len(harness.registry))
    report.add_fact("ballots", len(harness.server.export_ballot_box()))
    report.add_fact("revotes", min(settings.revoters, len(harness.vids)))
    report.add_fact("audits_passed", f"{passed}/{len(audits)}")
    report.add_fact("violations", len(verification.violations))
    report.add_fact("leak_scalar_scan", leaks.scalar_scan_performed)
    report.add_fact("tally", format_tally(tally))

    report.expect("all_audits_pass", len(harness.vids), passed)
    report.expect("board_clean", True, verification.clean)
    report.expect("no_leaks", True, leaks.clean)
    report.expect("tally_matches", format_tally(harness.expected_tally()), format_tally(tally))
    return report
