"""
Ballot-stuffing matrix: {direct, passcode} x {2FA off, on} x
{registrar-only, registrar+server}.

A compromised registrar sees everything it sends over the channel. A
compromised server additionally opens sessions for any voter without
authentication. In each cell the attacker tries to cast a valid ballot for a
voter who never takes part.
"""

from typing import List, Optional

from pydantic import BaseModel

from errors import (
    AuthenticationError,
    BallotRejectedError,
    IntegrityError,
    NoRecordError,
)
from schemas import (
    CompromiseEnum,
    CredentialPackageType,
    DeliveryModeEnum,
    MatrixReportType,
    PasscodeDeliveryType,
    ScenarioKindEnum,
    StuffingCellType,
)
from .harness import ElectionHarness, HarnessSettingsType


class StuffingCellSpecType(BaseModel):
    mode: DeliveryModeEnum
    two_factor: bool
    compromised: CompromiseEnum
    expect_success: bool


def default_cells() -> List[StuffingCellSpecType]:
    """Registrar alone succeeds only in passcode mode without a second factor."""
    cells = []
    for mode in DeliveryModeEnum:
        for two_factor in (False, True):
            for compromised in CompromiseEnum:
                expect_success = compromised == CompromiseEnum.REGISTRAR_AND_SERVER or (
                    mode == DeliveryModeEnum.PASSCODE and not two_factor
                )
                cells.append(StuffingCellSpecType(
                    mode=mode, two_factor=two_factor, compromised=compromised, expect_success=expect_success
                ))
    return cells


def run_stuffing_cell(
    settings: HarnessSettingsType,
    mode: DeliveryModeEnum,
    two_factor: bool,
    compromised: CompromiseEnum,
) -> StuffingCellType:
    harness = ElectionHarness(settings.model_copy(update={
        "voters": 2, "mode": mode, "two_factor": two_factor, "baseline": False,
    }))
    stolen = []
    harness.channel.attach_tap(lambda recipient, message: stolen.append((recipient, message)))
    harness.setup()

    victim = harness.vids[-1]
    attacker = harness.make_client(victim, label="attacker")
    for recipient, message in stolen:
        if recipient != victim:
            continue
        if isinstance(message, CredentialPackageType):
            attacker.receive_package(message)
        elif isinstance(message, PasscodeDeliveryType):
            attacker.receive_passcode(message)

    session = None
    if compromised == CompromiseEnum.REGISTRAR_AND_SERVER:
        session = harness.server.compromise().open_session(victim)

    stage = "cast"
    try:
        if mode == DeliveryModeEnum.DIRECT:
            attacker.cast(harness.server, 0, session=session)
        else:
            attacker.passcode_cast(harness.server, 0, session=session)
    except (AuthenticationError, NoRecordError):
        # NoRecordError: the registrar never sees server-issued logins
        stage = "authenticate"
    except IntegrityError:
        stage = "unseal"
    except BallotRejectedError as e:
        stage = f"validate:{e.reason}"

    success = stage == "cast" and harness.server.has_voted(victim)
    return StuffingCellType(
        mode=mode, two_factor=two_factor, compromised=compromised, success=success, stage=stage
    )


def run_ballot_stuffing_matrix(
    settings: Optional[HarnessSettingsType] = None,
    cells: Optional[List[StuffingCellSpecType]] = None,
) -> MatrixReportType:
    settings = settings or HarnessSettingsType()
    report = MatrixReportType(
        scenario=ScenarioKindEnum.BALLOT_STUFFING.value,
        seed=settings.seed,
        parameters={"profile": settings.profile.value},
    )
    for planned in cells or default_cells():
        cell = run_stuffing_cell(settings, planned.mode, planned.two_factor, planned.compromised)
        report.cells.append(cell)
        name = f"{cell.mode.value}.2fa-{'on' if cell.two_factor else 'off'}.{cell.compromised.value}"
        report.add_fact(f"cell.{name}", "success" if cell.success else f"blocked@{cell.stage}")
        report.expect(f"cell.{name}", planned.expect_success, cell.success)
    return report
