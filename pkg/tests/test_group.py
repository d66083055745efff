import pytest
from pydantic import ValidationError

from errors import GroupMembershipError
from primitives.group import (
    IDENTITY_TAG,
    SIGNATURE_CHALLENGE_TAG,
    GroupParams,
    hash_identity,
    hash_to_scalar,
    load_profile,
)

# Order-11 subgroup of Z_23^*: the quadratic residues
SMALL_SUBGROUP = {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18}

# chi-square, 15 degrees of freedom, alpha = 0.01
CHI_SQUARE_CRITICAL = 30.578


def test_small_profile_parameters(small):
    assert (small.p, small.q, small.g, small.h, small.trapdoor) == (23, 11, 2, 3, 8)
    assert pow(2, 8, 23) == 3
    assert small.element_bytes == 1
    assert small.scalar_bytes == 1


def test_small_subgroup_membership(small):
    members = {x for x in range(-2, 30) if small.is_member(x)}
    assert members == SMALL_SUBGROUP


def test_require_member_raises(small):
    assert small.require_member(9) == 9
    with pytest.raises(GroupMembershipError):
        small.require_member(5)


def test_wrong_trapdoor_rejected():
    with pytest.raises(ValidationError):
        GroupParams(name="bad", p=23, q=11, g=2, h=3, trapdoor=5)


def test_generator_outside_subgroup_rejected():
    with pytest.raises(ValidationError):
        GroupParams(name="bad", p=23, q=11, g=2, h=5)


def test_identity_generator_rejected():
    with pytest.raises(ValidationError):
        GroupParams(name="bad", p=23, q=11, g=1, h=3)


@pytest.mark.parametrize("p, q", [(23, 0), (23, 1), (23, 23), (0, 11), (2, 1)])
def test_degenerate_orders_rejected(p, q):
    with pytest.raises(ValueError):
        GroupParams(name="bad", p=p, q=q, g=2, h=3)


def test_public_view_drops_trapdoor(small):
    public = small.public_view()
    assert public.trapdoor is None
    assert not public.has_trapdoor
    assert (public.p, public.q, public.g, public.h) == (23, 11, 2, 3)


def test_production_profile(production):
    assert production.p.bit_length() == 2048
    assert production.q == (production.p - 1) // 2
    assert production.g == 4
    assert production.is_member(production.h)
    assert production.h not in (1, production.g)
    assert not production.has_trapdoor


def test_production_profile_is_stable():
    load_profile.cache_clear()
    first = load_profile("production")
    load_profile.cache_clear()
    assert load_profile("production").h == first.h


def test_unknown_profile():
    with pytest.raises(ValueError):
        load_profile("medium")


def test_hash_to_scalar_deterministic(small, production):
    for params in (small, production):
        assert hash_to_scalar(b"alice", params) == hash_to_scalar(b"alice", params)
        assert 0 <= hash_to_scalar(b"", params) < params.q


def test_hash_tags_separate_domains(production):
    assert hash_to_scalar(b"alice", production, IDENTITY_TAG) != hash_to_scalar(
        b"alice", production, SIGNATURE_CHALLENGE_TAG
    )


def test_hash_identity_uses_utf8(production):
    assert hash_identity("zoë", production) == hash_to_scalar("zoë".encode("utf-8"), production)


def test_hash_to_scalar_uniform(production):
    buckets = [0] * 16
    samples = 10_000
    for i in range(samples):
        buckets[hash_to_scalar(f"sample-{i}".encode(), production) % 16] += 1
    expected = samples / 16
    chi_square = sum((count - expected) ** 2 / expected for count in buckets)
    assert chi_square < CHI_SQUARE_CRITICAL
