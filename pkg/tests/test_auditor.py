import json

import pytest
from pydantic import ValidationError

from agents.auditor import SecondDeviceAgent, verify_receipt
from errors import AuthenticationError, NoBallotCastError, PayloadParseError
from schemas import AuditPayloadType, LoginCredentialsType, VerdictEnum, scan_for_values


def cast_and_audit(make_harness, **overrides):
    harness = make_harness(**overrides)
    harness.setup()
    harness.cast_all()
    return harness


def test_honest_audit_passes(make_harness):
    harness = cast_and_audit(make_harness)
    for report in harness.audit_all():
        assert report.verdict == VerdictEnum.PASS
        assert report.clash_check is True
        assert report.plaintext_choice == harness.choices[report.vid]
        assert report.receipt_valid and report.fingerprint_match


def test_audit_accepts_text_and_qr_forms(make_harness):
    harness = cast_and_audit(make_harness, voters=1)
    payload = harness.payloads["alice"]
    login = harness.clients["alice"].login_credentials()
    width = harness.params.scalar_bytes
    for form in (payload, payload.to_text(width), payload.to_qr_line(width)):
        assert harness.second_device.audit("alice", form, harness.server, login).verdict == VerdictEnum.PASS


def test_payload_text_format(small):
    payload = AuditPayloadType(opening=4, randomness=10, fingerprint="ab" * 32)
    assert payload.to_text(small.scalar_bytes) == "v1:04:0a:" + "ab" * 32
    assert AuditPayloadType.parse(payload.to_qr_line(small.scalar_bytes)) == payload


@pytest.mark.parametrize(
    "text",
    [
        "",
        "v2:04:0a:abcd",
        "v1:04:0a",
        "v1:zz:0a:abcd",
        "v1:04:0a:",
        "%%%",
        "v1:-4:0a:abcd",
        "v1:04:+a:abcd",
        "v1:0x4:0a:abcd",
        "v1:04:0a:ab cd",
        "v1:04:0a:abc",
    ],
)
def test_malformed_payload(text):
    with pytest.raises(PayloadParseError):
        AuditPayloadType.parse(text)


def test_audit_with_someone_elses_payload_fails(make_harness):
    harness = cast_and_audit(make_harness, voters=2)
    report = harness.audit("bob", harness.payloads["alice"])
    assert report.verdict == VerdictEnum.FAIL
    assert not report.fingerprint_match


def test_altered_choice_shows_no_match(make_harness):
    harness = cast_and_audit(make_harness, profile="production", voters=1)
    payload = harness.payloads["alice"]
    wrong_r = payload.model_copy(update={"randomness": (payload.randomness + 1) % harness.params.q})
    report = harness.audit("alice", wrong_r)
    assert report.plaintext_choice is None
    assert report.clash_check is True
    assert report.verdict == VerdictEnum.FAIL


def test_wrong_server_key_fails_receipt(make_harness):
    harness = cast_and_audit(make_harness, profile="production", voters=1)
    device = SecondDeviceAgent(harness.codebook, harness.election_pk, harness.params.g)
    login = harness.clients["alice"].login_credentials()
    report = device.audit("alice", harness.payloads["alice"], harness.server, login)
    assert not report.receipt_valid
    assert report.verdict == VerdictEnum.FAIL

    entry = harness.server.export_ballot_box()[0]
    acknowledgement = harness.acknowledgements["alice"]
    assert verify_receipt(acknowledgement, entry.ballot, harness.server.verification_key, harness.params)


def test_baseline_audit_skips_clash_check(make_harness):
    harness = cast_and_audit(make_harness, baseline=True, voters=2)
    report = harness.audit("alice")
    assert report.clash_check is None
    assert report.verdict == VerdictEnum.PASS
    assert "clash_check=skipped" in report.to_text()


def test_audit_errors(make_harness):
    harness = make_harness(voters=2)
    harness.setup()
    harness.cast_one("alice", 0)
    payload = harness.payloads["alice"]
    with pytest.raises(NoBallotCastError):
        harness.second_device.audit("bob", payload, harness.server, harness.clients["bob"].login_credentials())
    with pytest.raises(AuthenticationError):
        harness.second_device.audit("alice", payload, harness.server, LoginCredentialsType(vid="alice", password="x"))


def test_second_device_keeps_no_secrets(make_harness):
    harness = cast_and_audit(make_harness, profile="production", voters=2)
    harness.audit_all()
    values = [p.opening for p in harness.payloads.values()] + [p.randomness for p in harness.payloads.values()]
    dump = json.dumps(harness.second_device.dump_state())
    assert scan_for_values(dump, values, [harness.params.scalar_bytes]) == []
    assert len(harness.second_device.dump_state()["reports"]) == 2


def test_payload_scalars_must_lie_below_group_order(small):
    assert AuditPayloadType.parse("v1:0b:00:abcd").opening == 11
    with pytest.raises(PayloadParseError):
        AuditPayloadType.parse("v1:0b:00:abcd", small.q)
    with pytest.raises(PayloadParseError):
        AuditPayloadType.parse("v1:00:0b:abcd", small.q)
    assert AuditPayloadType.parse("v1:0a:0a:abcd", small.q).randomness == 10
    with pytest.raises(ValidationError):
        AuditPayloadType(opening=-1, randomness=0, fingerprint="ab")


def test_audit_rejects_out_of_range_payload(make_harness):
    harness = cast_and_audit(make_harness, voters=1)
    payload = harness.payloads["alice"].model_copy(update={"randomness": harness.params.q})
    login = harness.clients["alice"].login_credentials()
    with pytest.raises(PayloadParseError):
        harness.second_device.audit("alice", payload, harness.server, login)
    with pytest.raises(PayloadParseError):
        harness.second_device.audit("alice", payload.to_text(harness.params.scalar_bytes), harness.server, login)
