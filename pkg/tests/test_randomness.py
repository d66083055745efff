import pytest

from errors import SecretDestroyedError
from primitives.randomness import RandomSource
from schemas import Secret, scan_for_values


def test_seeded_source_replays():
    a, b = RandomSource(5), RandomSource(5)
    assert [a.randbelow(1000) for _ in range(10)] == [b.randbelow(1000) for _ in range(10)]
    assert a.token_bytes(16) == b.token_bytes(16)


def test_fork_ignores_parent_position():
    a, b = RandomSource(5), RandomSource(5)
    a.randbelow(10)
    assert a.fork("client/alice").randbelow(10**9) == b.fork("client/alice").randbelow(10**9)
    assert b.fork("client/alice").randbelow(10**9) != b.fork("client/bob").randbelow(10**9)


def test_unseeded_source():
    rng = RandomSource()
    assert not rng.deterministic
    assert 1 <= rng.nonzero_below(2) < 2
    assert not rng.fork("x").deterministic


def test_secret_destroy():
    secret = Secret(42, "opening")
    assert secret.reveal() == 42
    assert "42" not in repr(secret)
    secret.destroy()
    assert secret.destroyed
    assert secret.dump() is None
    with pytest.raises(SecretDestroyedError):
        secret.reveal()


def test_scan_for_values_forms():
    value = 0xDEADBEEFCAFE1234
    assert scan_for_values(f"x={value}", [value]) == [value]
    assert scan_for_values("x=DEADBEEFCAFE1234", [value]) == [value]
    assert scan_for_values("x=00deadbeefcafe1234", [value], [9]) == [value]
    assert scan_for_values("nothing here", [value]) == []
    assert scan_for_values("token abc", ["abc", "xyz"]) == ["abc"]
    assert scan_for_values("blob 0a0b", [b"\x0a\x0b"]) == [b"\x0a\x0b"]
