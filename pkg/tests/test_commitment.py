import pytest

from errors import TrapdoorUnavailableError
from primitives.commitment import (
    commit,
    commit_identity,
    enumerate_openings,
    equivocate,
    verify_commitment,
    verify_identity_opening,
)
from primitives.group import hash_identity
from schemas import CommitmentType


def brute_force_commit(x: int, r: int) -> int:
    """Independent small-group arithmetic: 2^x * 3^r mod 23."""
    return (pow(2, x, 23) * pow(3, r, 23)) % 23


def test_worked_vectors(small):
    assert commit(3, 2, small).value == 3
    assert commit(3, 4, small).value == 4
    assert commit(0, 0, small).value == 1


def test_matches_brute_force(small):
    for x in range(11):
        for r in range(11):
            assert commit(x, r, small).value == brute_force_commit(x, r)


def test_inputs_reduced_mod_q(small):
    assert commit(3 + 11, 2 + 22, small) == commit(3, 2, small)


def test_verify_commitment(small):
    reference = commit(3, 2, small)
    assert verify_commitment(reference, 3, 2, small)
    assert not verify_commitment(reference, 3, 4, small)
    assert not verify_commitment(reference, 5, 2, small)


def test_identity_opening(small):
    reference = commit_identity("alice", 6, small)
    assert reference == commit(hash_identity("alice", small), 6, small)
    assert verify_identity_opening(reference, "alice", 6, small)


def test_equivocate_worked_vector(small):
    reference = commit(3, 2, small)
    t_star = equivocate(reference, 3, 2, 5, small)
    assert t_star == 10
    assert commit(5, 10, small) == reference


def test_equivocate_identity_case(small):
    reference = commit(3, 2, small)
    assert equivocate(reference, 3, 2, 3, small) == 2


def test_equivocate_every_target(small):
    for x in range(11):
        for t in range(11):
            reference = commit(x, t, small)
            for target in range(11):
                t_star = equivocate(reference, x, t, target, small)
                assert verify_commitment(reference, target, t_star, small)


def test_equivocate_rejects_wrong_original(small):
    with pytest.raises(ValueError):
        equivocate(commit(3, 2, small), 3, 4, 5, small)


def test_equivocate_unavailable_without_trapdoor(small, production):
    with pytest.raises(TrapdoorUnavailableError):
        equivocate(commit(3, 2, small), 3, 2, 5, small.public_view())
    with pytest.raises(TrapdoorUnavailableError):
        equivocate(CommitmentType(value=production.g), 1, 0, 2, production)


def test_census_one_opening_per_value(small):
    table = enumerate_openings(small)
    assert len(table) == 11
    for value, pairs in table.items():
        assert len(pairs) == 11
        assert sorted(x for x, _ in pairs) == list(range(11))
        assert all(brute_force_commit(x, r) == value for x, r in pairs)


def test_commit_uniform_for_fixed_x(small):
    for x in range(11):
        values = {commit(x, r, small).value for r in range(11)}
        assert len(values) == 11


def test_census_refused_for_large_groups(production):
    with pytest.raises(ValueError):
        enumerate_openings(production)
