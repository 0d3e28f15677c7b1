"""
Phase timers for key generation.

Key generation reports where its time goes through a timer object; the
benchmark passes a PhaseTimer, everything else gets the no-op NULL_TIMER.
"""

import time
from contextlib import contextmanager
from typing import Dict, Iterator

# Phase labels of the key generation cost model.
PHASES = ("res", "xgcd", "pmod", "mul", "oddcoe")


class PhaseTimer:
    """Accumulates monotonic wall-clock seconds per named phase."""

    def __init__(self) -> None:
        self.totals: Dict[str, float] = {name: 0.0 for name in PHASES}
        self.counts: Dict[str, int] = {name: 0 for name in PHASES}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.totals[name] = self.totals.get(name, 0.0) + time.perf_counter() - start
            self.counts[name] = self.counts.get(name, 0) + 1

    def total(self) -> float:
        return sum(self.totals.values())


class _NullTimer(PhaseTimer):
    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        yield


NULL_TIMER: PhaseTimer = _NullTimer()
