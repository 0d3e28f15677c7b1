"""Shared fixtures."""

import random
from typing import Callable, Iterable, List

import pytest

from fhe_keygen.core import config as config_module
from fhe_keygen.core.ring import DEFAULT_KRONECKER_THRESHOLD, set_kronecker_threshold


class ScriptedRandom(random.Random):
    """Random whose getrandbits replays a fixed list of values."""

    def __init__(self, values: Iterable[int]):
        super().__init__(0)
        self._values: List[int] = list(values)

    def getrandbits(self, k: int) -> int:
        return self._values.pop(0)


@pytest.fixture
def scripted_rng() -> Callable[..., ScriptedRandom]:
    def make(*values: int) -> ScriptedRandom:
        return ScriptedRandom(values)

    return make


@pytest.fixture(autouse=True)
def _isolate_global_state(monkeypatch: pytest.MonkeyPatch):
    for name in config_module.ENV_OVERRIDES:
        monkeypatch.delenv(name, raising=False)
    config_module.reset_config()
    yield
    set_kronecker_threshold(DEFAULT_KRONECKER_THRESHOLD)
    config_module.reset_config()
