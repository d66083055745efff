import pytest

import config
from primitives.group import load_profile
from primitives.randomness import RandomSource
from scenarios import ElectionHarness, HarnessSettingsType

FAST_KDF_ITERATIONS = 1000


@pytest.fixture(autouse=True)
def fast_kdf(monkeypatch):
    """PBKDF2 work factors are read at call time; keep the suite quick."""
    monkeypatch.setattr(config, "PASSCODE_KDF_ITERATIONS", FAST_KDF_ITERATIONS)
    monkeypatch.setattr(config, "PASSWORD_HASH_ITERATIONS", FAST_KDF_ITERATIONS)


@pytest.fixture
def small():
    return load_profile("test-small")


@pytest.fixture(scope="session")
def production():
    return load_profile("production")


@pytest.fixture
def rng():
    return RandomSource(7)


@pytest.fixture
def make_settings():
    def factory(**overrides) -> HarnessSettingsType:
        values = {"profile": "test-small", "seed": 1, "voters": 4, "choices": 3, "parallel": False}
        values.update(overrides)
        return HarnessSettingsType(**values)

    return factory


@pytest.fixture
def make_harness(make_settings):
    def factory(**overrides) -> ElectionHarness:
        return ElectionHarness(make_settings(**overrides))

    return factory
