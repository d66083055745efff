import subprocess
import sys
from pathlib import Path

import pytest

from board import (
    format_registry,
    parse_ballot_box,
    parse_registry,
    scan_privacy_leakage,
    verify_eligibility,
)
from board.verifier import main as verifier_main
from primitives.encoding import element_hex, scalar_hex
from schemas import CommitmentType, RegistryRecordType, ViolationKindEnum

REPO_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def election(make_harness):
    def factory(**overrides):
        harness = make_harness(**overrides)
        harness.setup()
        harness.cast_all()
        return harness

    return factory


def kinds(report):
    return [v.kind for v in report.violations]


def replace_data_line(text, index, transform):
    lines = text.splitlines()
    data = [i for i, line in enumerate(lines) if not line.startswith("#")]
    lines[data[index]] = transform(lines[data[index]])
    return "\n".join(lines) + "\n"


def test_registry_format(small):
    records = [RegistryRecordType(public_key=8, reference=CommitmentType(value=3))]
    assert format_registry(records, small) == (
        "# evercred-registry v1\n"
        "# profile=test-small\n"
        "# p=17\n"
        "# q=b\n"
        "# g=2\n"
        "# h=3\n"
        "# order=sorted\n"
        "08,03\n"
    )


def test_registry_parse(small):
    records = [
        RegistryRecordType(public_key=8, reference=CommitmentType(value=3)),
        RegistryRecordType(public_key=2, reference=CommitmentType(value=4)),
    ]
    parsed = parse_registry(format_registry(records, small))
    assert parsed.errors == []
    assert parsed.records == records
    assert (parsed.params.p, parsed.params.q, parsed.params.g, parsed.params.h) == (23, 11, 2, 3)
    assert parsed.params.trapdoor is None


def test_artifacts_carry_no_identifiers_or_timestamps(election):
    harness = election(voters=3)
    for text in (harness.registry_text(), harness.ballot_box_text()):
        for vid in harness.vids:
            assert vid not in text
        assert "accepted_at" not in text


def test_ballot_box_roundtrip(election):
    harness = election(voters=3)
    parsed = parse_ballot_box(harness.ballot_box_text(), harness.params)
    assert parsed.errors == []
    assert [e.ballot for e in parsed.entries] == [e.ballot for e in harness.server.export_ballot_box()]


def test_honest_board_is_clean(election):
    harness = election(voters=4)
    report = harness.verify_board()
    assert report.clean
    assert report.entries_checked == 4
    assert report.registry_records == 4


def test_forged_signature_detected(election):
    harness = election(profile="production", voters=2)

    def break_signature(line):
        head, sigma = line.rsplit(",", 1)
        last = "0" if sigma[-1] != "0" else "1"
        return f"{head},{sigma[:-1]}{last}"

    box = replace_data_line(harness.ballot_box_text(), 1, break_signature)
    report = verify_eligibility(harness.registry_text(), box)
    assert kinds(report) == [ViolationKindEnum.BAD_SIGNATURE]
    assert report.violations[0].entry == 2


def test_unregistered_reference_detected(election):
    harness = election(profile="production", voters=2)
    fake = element_hex(harness.params.g, harness.params)

    def swap_reference(line):
        parts = line.split(",")
        parts[3] = fake
        return ",".join(parts)

    box = replace_data_line(harness.ballot_box_text(), 0, swap_reference)
    assert kinds(verify_eligibility(harness.registry_text(), box)) == [ViolationKindEnum.UNKNOWN_REFERENCE]


def test_duplicate_reference_depends_on_revote_policy(election):
    harness = election(voters=2)
    box = harness.ballot_box_text()
    duplicated = box + "3," + box.splitlines()[-1].split(",", 1)[1] + "\n"
    assert kinds(verify_eligibility(harness.registry_text(), duplicated)) == [ViolationKindEnum.DUPLICATE_REFERENCE]

    relaxed = duplicated.replace("# revote=forbidden", "# revote=last-counts")
    assert verify_eligibility(harness.registry_text(), relaxed).clean


def test_parse_errors_reported_per_line(election):
    harness = election(voters=2)
    box = harness.ballot_box_text() + "not,a,ballot\n"
    report = verify_eligibility(harness.registry_text(), box)
    assert kinds(report) == [ViolationKindEnum.PARSE_ERROR]
    assert report.violations[0].entry == len(box.splitlines())
    assert report.entries_checked == 2


@pytest.mark.parametrize("header", ["# q=0", "# q=1", "# q=-b", "# q=0xb"])
def test_bad_group_header_is_a_parse_error(election, header):
    harness = election(voters=2)
    registry = harness.registry_text().replace("# q=b", header)
    report = verify_eligibility(registry, harness.ballot_box_text())
    assert kinds(report) == [ViolationKindEnum.PARSE_ERROR]
    assert report.entries_checked == 0


@pytest.mark.parametrize(
    "field, value",
    [(1, "ff" * 40), (2, "-1"), (2, "+3"), (3, "0x03"), (1, "17"), (4, "zz"), (0, "-2")],
)
def test_out_of_range_fields_are_parse_errors(election, field, value):
    harness = election(voters=2)

    def overwrite(line):
        parts = line.split(",")
        parts[field] = value
        return ",".join(parts)

    box = replace_data_line(harness.ballot_box_text(), 0, overwrite)
    report = verify_eligibility(harness.registry_text(), box)
    assert kinds(report) == [ViolationKindEnum.PARSE_ERROR]
    assert report.violations[0].entry == 4
    assert report.entries_checked == 1


def test_registry_record_out_of_range(election):
    harness = election(voters=2)
    registry = replace_data_line(harness.registry_text(), 0, lambda line: "ff," + line.split(",")[1])
    report = verify_eligibility(registry, harness.ballot_box_text())
    assert ViolationKindEnum.PARSE_ERROR in kinds(report)


def test_ciphertext_outside_subgroup(election):
    harness = election(voters=2)

    def non_residue(line):
        parts = line.split(",")
        parts[1] = "05"
        return ",".join(parts)

    box = replace_data_line(harness.ballot_box_text(), 0, non_residue)
    report = verify_eligibility(harness.registry_text(), box)
    assert kinds(report) == [ViolationKindEnum.MALFORMED_ELEMENT]
    assert report.violations[0].entry == 1


def test_verifier_main_reports_malformed_artifacts(election, tmp_path, capsys):
    harness = election(voters=2)
    registry_path, box_path = harness.export_artifacts(tmp_path)
    box_path.write_text(replace_data_line(box_path.read_text(), 0, lambda line: line.replace(",", ",-", 1)))
    assert verifier_main([str(registry_path), str(box_path)]) == 1
    assert '"parse-error"' in capsys.readouterr().out

    registry_path.write_text(registry_path.read_text().replace("# q=b", "# q=0"))
    assert verifier_main([str(registry_path), str(box_path)]) == 1


def test_missing_headers():
    report = verify_eligibility("garbage\n", "garbage\n")
    assert kinds(report) == [ViolationKindEnum.PARSE_ERROR]
    assert report.entries_checked == 0


def test_leak_scan_clean_on_production(election):
    harness = election(profile="production", voters=3)
    report = harness.scan_board()
    assert report.scalar_scan_performed
    assert report.clean


def test_leak_scan_finds_planted_values(election):
    harness = election(profile="production", voters=2)
    alice_opening = harness.payloads["alice"].opening
    box = harness.ballot_box_text() + f"# note alice {scalar_hex(alice_opening, harness.params)}\n"
    report = scan_privacy_leakage(
        harness.registry_text(),
        box,
        harness.vids,
        harness.params,
        {vid: p.opening for vid, p in harness.payloads.items()},
    )
    found = {(f.artifact, f.kind, f.label) for f in report.findings}
    assert found == {("ballot-box", "vid", "alice"), ("ballot-box", "opening", "alice")}
    assert all(str(alice_opening) not in f.model_dump_json() for f in report.findings)


def test_leak_scan_skips_scalars_on_toy_group(election):
    harness = election(voters=2)
    report = harness.scan_board()
    assert not report.scalar_scan_performed
    assert report.clean


def test_verifier_main(election, tmp_path, capsys):
    harness = election(voters=2)
    registry_path, box_path = harness.export_artifacts(tmp_path)
    assert verifier_main([str(registry_path), str(box_path)]) == 0
    assert '"clean": true' in capsys.readouterr().out

    box_path.write_text(box_path.read_text() + "3,zz\n")
    assert verifier_main([str(registry_path), str(box_path)]) == 1


def test_verifier_runs_as_module(election, tmp_path):
    harness = election(voters=2)
    registry_path, box_path = harness.export_artifacts(tmp_path)
    completed = subprocess.run(
        [sys.executable, "-m", "board.verifier", str(registry_path), str(box_path)],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
    )
    assert completed.returncode == 0
    assert '"clean": true' in completed.stdout
