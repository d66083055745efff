"""
Everlasting privacy, made concrete in the trapdoor group.

A published rho opens to every registered identifier: with the trapdoor the
opening for each vid is computed explicitly, and an exhaustive census shows
that every commitment value has exactly one opening per committed value.
"""

from typing import Optional

from errors import TrapdoorUnavailableError
from primitives.commitment import enumerate_openings, equivocate, verify_identity_opening
from primitives.encoding import element_hex
from primitives.group import hash_identity, load_profile
from schemas import DeliveryModeEnum, EquivocationReportType, ScenarioKindEnum
from .harness import ElectionHarness, HarnessSettingsType


def run_everlasting_privacy_demo(settings: Optional[HarnessSettingsType] = None) -> EquivocationReportType:
    """
    Raises:
        TrapdoorUnavailableError: the profile has no trapdoor (production)
    """
    settings = settings or HarnessSettingsType()
    params = load_profile(settings.profile.value)
    if not params.has_trapdoor:
        raise TrapdoorUnavailableError(f"profile '{params.name}' has no trapdoor; the demo needs one")

    harness = ElectionHarness(settings.model_copy(update={"mode": DeliveryModeEnum.DIRECT, "baseline": False}))
    harness.setup()
    harness.cast_all()

    owner = harness.vids[0]
    reference = harness.clients[owner].reference
    published = {entry.ballot.reference for entry in harness.server.export_ballot_box()}
    true_opening = harness.payloads[owner].opening

    openings = {
        vid: equivocate(reference, hash_identity(owner, params), true_opening, hash_identity(vid, params), params)
        for vid in harness.vids
    }
    valid = [vid for vid, t in openings.items() if verify_identity_opening(reference, vid, t, params)]

    census = enumerate_openings(params)
    full_census = all(
        sorted(x for x, _ in pairs) == list(range(params.q)) for pairs in census.values()
    )

    report = EquivocationReportType(
        scenario=ScenarioKindEnum.EVERLASTING_PRIVACY.value,
        seed=settings.seed,
        parameters={"profile": params.name, "voters": str(len(harness.vids))},
        openings=openings,
    )
    report.add_fact("reference", element_hex(reference.value, params))
    for vid in sorted(openings):
        report.add_fact(f"opening.{vid}", openings[vid])
    report.add_fact("census.commitment_values", len(census))
    report.add_fact("census.openings_per_value", ",".join(sorted({str(len(p)) for p in census.values()})))

    report.expect("reference_published", True, reference in published)
    report.expect("valid_openings", len(harness.vids), len(valid))
    report.expect("true_opening_among_them", True, true_opening in openings.values())
    report.expect("census_one_opening_per_value", True, full_census)
    report.expect("census_covers_group", params.q, len(census))
    return report
