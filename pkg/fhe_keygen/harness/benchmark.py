"""
Timing benchmark: per-phase cost of the two key generation algorithms.

Runs single-threaded. Key k of both algorithms draws from the same stream
derive_rng(seed, "key", k), and each report holds per-key averages.
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from ..core.errors import InvalidParametersError
from ..core.keygen import DEFAULT_MAX_RETRIES, KeygenParams, derive_rng, generate_keys
from ..core.timing import PhaseTimer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimingReport:
    """Average seconds per generated key, by phase."""

    algorithm: str
    n: int
    t: int
    keys: int
    trials: int
    t_res: float = 0.0
    t_xgcd: float = 0.0
    t_pmod: float = 0.0
    t_mul: float = 0.0
    t_oddcoe: float = 0.0
    t_total: float = 0.0

    @classmethod
    def from_timer(
        cls,
        algorithm: str,
        n: int,
        t: int,
        keys: int,
        trials: int,
        timer: PhaseTimer,
        wall: float,
    ) -> "TimingReport":
        if keys == 0:
            return cls(algorithm, n, t, 0, trials)
        return cls(
            algorithm=algorithm,
            n=n,
            t=t,
            keys=keys,
            trials=trials,
            t_res=timer.totals["res"] / keys,
            t_xgcd=timer.totals["xgcd"] / keys,
            t_pmod=timer.totals["pmod"] / keys,
            t_mul=timer.totals["mul"] / keys,
            t_oddcoe=timer.totals["oddcoe"] / keys,
            # wall time also covers sampling, so it bounds every phase
            t_total=max(wall, timer.total()) / keys,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class BenchmarkComparison:
    gh: TimingReport
    ours: TimingReport

    @property
    def speedup(self) -> float:
        """t_total(gh) / t_total(ours); 0.0 when nothing was timed."""
        if self.ours.t_total <= 0:
            return 0.0
        return self.gh.t_total / self.ours.t_total

    @property
    def res_ratio(self) -> float:
        if self.ours.t_res <= 0:
            return 0.0
        return self.gh.t_res / self.ours.t_res


def run_timing_benchmark(
    n: int,
    t: int,
    keys_wanted: int,
    seed: int,
    max_retries: int = DEFAULT_MAX_RETRIES,
    signed: bool = False,
    odd_strategy: str = "adjust",
    odd_search_limit: Optional[int] = None,
) -> BenchmarkComparison:
    """
    Generate ``keys_wanted`` keys with each algorithm and time every phase.

    Raises:
        RetriesExhaustedError: When a single key runs out of candidates
    """
    if keys_wanted < 0:
        raise InvalidParametersError("keys_wanted must be nonnegative")
    params = KeygenParams(
        n=n,
        t=t,
        seed=seed,
        max_retries=max_retries,
        signed=signed,
        odd_strategy=odd_strategy,
        odd_search_limit=odd_search_limit,
    )

    reports: Dict[str, TimingReport] = {}
    for algorithm in ("gh", "ours"):
        timer = PhaseTimer()
        trials = 0
        wall = 0.0
        for k in range(keys_wanted):
            rng = derive_rng(seed, "key", k)
            start = time.perf_counter()
            result = generate_keys(algorithm, params, rng=rng, timer=timer)
            wall += time.perf_counter() - start
            trials += result.trials
            logger.debug(
                f"{algorithm}: key {k + 1}/{keys_wanted} "
                f"after {result.trials} trial(s)"
            )
        reports[algorithm] = TimingReport.from_timer(
            algorithm, n, t, keys_wanted, trials, timer, wall
        )
        logger.info(
            f"{algorithm}: {keys_wanted} keys, {trials} trials, "
            f"{reports[algorithm].t_total:.4f}s per key"
        )

    comparison = BenchmarkComparison(gh=reports["gh"], ours=reports["ours"])
    logger.info(f"speedup {comparison.speedup:.3f}x at n={n}, t={t}")
    return comparison
