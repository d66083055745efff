"""
Cross-voting: a voter logged in as A casts a ballot built from B's credentials.
"""

from typing import Optional

from schemas import DeliveryModeEnum, RejectionReasonEnum, ScenarioKindEnum, ScenarioReportType, SimulationLog
from .harness import ElectionHarness, HarnessSettingsType


def _reason(result) -> str:
    return "accepted" if result.accepted else result.reason.value


def voter_logged_in(log: SimulationLog, vid: str) -> bool:
    return any(event.details.get("vid") == vid for event in log.events(actor="voting-server", event="authenticated"))


def run_cross_voting(settings: Optional[HarnessSettingsType] = None) -> ScenarioReportType:
    settings = settings or HarnessSettingsType()
    report = ScenarioReportType(
        scenario=ScenarioKindEnum.CROSS_VOTING.value,
        seed=settings.seed,
        parameters={"profile": settings.profile.value},
    )
    pair = {"voters": 2, "mode": DeliveryModeEnum.DIRECT}

    augmented = ElectionHarness(settings.model_copy(update={**pair, "baseline": False}))
    augmented.setup()
    attacker, victim = augmented.vids
    result = augmented.cross_vote(attacker, augmented.clients[victim].credential_package())
    report.add_fact("augmented.cross_vote", _reason(result))
    report.expect("augmented.cross_vote_rejected", RejectionReasonEnum.COMMITMENT_MISMATCH.value, _reason(result))

    augmented.cast_one(attacker)
    report.add_fact("augmented.own_credentials", "accepted")
    report.expect("augmented.own_credentials_accepted", True, augmented.server.has_voted(attacker))

    baseline = ElectionHarness(settings.model_copy(update={**pair, "baseline": True}))
    baseline.setup()
    package = baseline.clients[victim].credential_package()
    result = baseline.cross_vote(attacker, package)
    box = baseline.server.export_ballot_box()
    victim_credential_used = any(entry.ballot.reference == package.reference for entry in box)
    victim_logged_in = voter_logged_in(baseline.log, victim)
    report.add_fact("baseline.cross_vote", _reason(result))
    report.add_fact("baseline.victim_credential_used", victim_credential_used)
    report.add_fact("baseline.victim_recorded_as_voted", baseline.server.has_voted(victim))
    report.add_fact("baseline.victim_logged_in", victim_logged_in)
    report.add_fact("baseline.attacker_recorded_as_voted", baseline.server.has_voted(attacker))

    report.expect("baseline.cross_vote_accepted", "accepted", _reason(result))
    report.expect("baseline.inconsistency", True, victim_credential_used and not baseline.server.has_voted(victim))
    report.expect("baseline.victim_never_logged_in", False, victim_logged_in)
    return report
