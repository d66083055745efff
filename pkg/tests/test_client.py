import json

import pytest

from agents.client import VoterClientAgent, ballot_fingerprint, create_ballot
from errors import (
    AuthenticationError,
    InvalidChoiceError,
    IntegrityError,
    NoRecordError,
    RegistryMismatchError,
    SecretDestroyedError,
)
from primitives.commitment import commit_identity
from primitives.elgamal import Codebook, elgamal_decrypt
from primitives.encoding import encode_ballot_message
from primitives.randomness import RandomSource
from primitives.signature import signing_keygen, verify
from schemas import (
    CommitmentType,
    PasscodeDeliveryType,
    RegistryRecordType,
    SealedCredentialsType,
    scan_for_values,
)


def test_create_ballot(small):
    rng = RandomSource(9)
    keys = signing_keygen(small, rng)
    codebook = Codebook(small, 3)
    ballot, payload = create_ballot("alice", keys.secret_key, 4, 2, 8, codebook, rng)

    assert ballot.reference == commit_identity("alice", 4, small)
    assert elgamal_decrypt(3, ballot.ciphertext, small) == codebook.encode(2)
    assert verify(keys.public_key, encode_ballot_message(ballot.ciphertext, ballot.reference, small), ballot.signature, small)
    assert payload.opening == 4
    assert 1 <= payload.randomness < small.q
    assert payload.fingerprint == ballot_fingerprint(ballot, small)
    assert len(payload.fingerprint) == 64


def test_create_ballot_invalid_choice(small):
    with pytest.raises(InvalidChoiceError):
        create_ballot("alice", 2, 4, 3, 8, Codebook(small, 3), RandomSource(1))


def test_baseline_ballot_uses_given_reference(small):
    reference = CommitmentType(value=13)
    ballot, payload = create_ballot("alice", 2, None, 0, 8, Codebook(small, 3), RandomSource(1), reference=reference)
    assert ballot.reference == reference
    assert payload.opening == 0


def test_fingerprint_differs_per_ballot(production):
    rng = RandomSource(9)
    keys = signing_keygen(production, rng)
    codebook = Codebook(production, 3)
    prints = {
        create_ballot("alice", keys.secret_key, 4, choice, production.g, codebook, RandomSource(1))[1].fingerprint
        for choice in range(3)
    }
    assert len(prints) == 3


def test_direct_cast_destroys_secrets(make_harness):
    harness = make_harness(profile="production", voters=1)
    harness.setup()
    client = harness.clients["alice"]
    package = client.credential_package()

    acknowledgement, payload = harness.cast_one("alice", 1)
    assert payload.opening == package.opening

    dump = json.dumps(client.dump_state())
    assert scan_for_values(dump, [package.secret_key, package.opening], [harness.params.scalar_bytes]) == []
    with pytest.raises(SecretDestroyedError):
        client.credential_package()


def test_passcode_cast(make_harness):
    harness = make_harness(mode="passcode", voters=2)
    harness.setup()
    client = harness.clients["alice"]
    assert client.reference is None

    harness.cast_one("alice", 0)
    assert client.reference in [record.reference for record in harness.registry]
    assert client.dump_state()["secret_key"] is None
    assert client.dump_state()["opening"] is None


def test_passcode_cast_wrong_passcode(make_harness):
    harness = make_harness(mode="passcode", voters=1)
    harness.setup()
    client = harness.clients["alice"]
    client.receive_passcode(PasscodeDeliveryType(vid="alice", passcode="WRONGPASSCODE"))
    with pytest.raises(AuthenticationError):
        client.passcode_cast(harness.server, 0)
    assert harness.server.export_ballot_box() == []


def test_passcode_cast_tampered_seal(make_harness):
    harness = make_harness(mode="passcode", voters=1)
    harness.setup()
    sealed = harness.server._sealed["alice"]
    harness.server._sealed["alice"] = SealedCredentialsType(
        secret_key_blob=sealed.opening_blob, opening_blob=sealed.secret_key_blob
    )
    with pytest.raises(IntegrityError):
        harness.clients["alice"].passcode_cast(harness.server, 0)
    assert [e.details["vid"] for e in harness.log.events("voter-client", "unseal_failed")] == ["alice"]
    assert harness.server.export_ballot_box() == []


def test_check_registry(make_harness):
    harness = make_harness(voters=2)
    harness.setup()
    client = harness.clients["alice"]
    client.check_registry(harness.registry)
    others = [r for r in harness.registry if r.reference != client.reference]
    with pytest.raises(RegistryMismatchError):
        client.check_registry(others)


def test_client_without_credentials(small):
    client = VoterClientAgent("alice", Codebook(small, 3), 8, 2)
    with pytest.raises(NoRecordError):
        client.login_credentials()
    with pytest.raises(NoRecordError):
        client.check_registry([RegistryRecordType(public_key=2, reference=CommitmentType(value=3))])
    with pytest.raises(NoRecordError):
        client.cast(None, 0)
    with pytest.raises(NoRecordError):
        client.passcode_cast(None, 0)


def test_seeded_clients_build_identical_ballots(make_harness):
    boxes = []
    for _ in range(2):
        harness = make_harness(voters=3)
        harness.setup()
        harness.cast_all()
        boxes.append([e.ballot for e in harness.server.export_ballot_box()])
    assert boxes[0] == boxes[1]
