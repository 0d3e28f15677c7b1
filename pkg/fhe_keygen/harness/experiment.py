"""
Category experiment: how often does each sampling rule give an odd
determinant, and how often a simple HNF?

Every trial samples one generator with the algorithm's sampling rule and files
it into a 2x2 grid (even/odd determinant by simple/non-simple HNF). Trial k of
both algorithms draws from derive_rng(seed, k), so the second algorithm's
candidate is the first one's after the parity fix.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

from ..core.errors import InvalidParametersError, KeygenError, NotCoprimeError
from ..core.hnf import hnf_of, is_simple_hnf
from ..core.keygen import (
    ALGORITHMS,
    DEFAULT_HNF_CEILING,
    KeygenParams,
    derive_rng,
    lattice_is_simple,
    parity_of_determinant,
    sample_generator,
    sample_odd_generator,
)
from ..core.linalg import bareiss_determinant
from ..core.ring import rotation_basis

logger = logging.getLogger(__name__)

CLASSIFIERS = ("hnf", "gcd")


@dataclass(frozen=True)
class CategoryCounts:
    """One algorithm's 2x2 grid over ``trials`` sampled generators."""

    algorithm: str
    n: int
    t: int
    trials: int
    seed: int
    even_d_shnf: int = 0
    even_d_nonshnf: int = 0
    odd_d_shnf: int = 0
    odd_d_nonshnf: int = 0
    classifier: str = "gcd"

    def __post_init__(self) -> None:
        total = (
            self.even_d_shnf
            + self.even_d_nonshnf
            + self.odd_d_shnf
            + self.odd_d_nonshnf
        )
        if total != self.trials:
            raise InvalidParametersError(
                f"category counts sum to {total}, expected {self.trials}"
            )
        if self.classifier not in CLASSIFIERS:
            raise InvalidParametersError(f"unknown classifier {self.classifier!r}")

    @property
    def odd_total(self) -> int:
        return self.odd_d_shnf + self.odd_d_nonshnf

    @property
    def odd_fraction(self) -> float:
        return self.odd_total / self.trials if self.trials else 0.0

    @property
    def odd_shnf_fraction(self) -> float:
        """Share of simple HNFs among odd-determinant lattices."""
        return self.odd_d_shnf / self.odd_total if self.odd_total else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def classify_trial(
    algorithm: str, params: KeygenParams, trial: int, use_oracle: bool
) -> Tuple[bool, bool]:
    """
    Sample trial ``trial`` and return (odd determinant, simple HNF).

    With use_oracle the determinant and HNF are computed exactly and the
    parity shortcut is cross-checked; otherwise lattice_is_simple decides
    from the single coefficient w_0. A singular lattice counts as even and
    non-simple.
    """
    rng = derive_rng(params.seed, trial)
    if algorithm == "gh":
        generator = sample_generator(params, rng)
    else:
        generator = sample_odd_generator(params, rng)
    ring = params.ring
    odd = parity_of_determinant(generator, ring) == 1
    if generator.v.is_zero():
        return False, False

    if use_oracle:
        basis = rotation_basis(generator.v, ring)
        det = bareiss_determinant(basis)
        if (det & 1) != odd:
            raise KeygenError(f"parity shortcut disagrees with det = {det}")
        if det == 0:
            return False, False
        return odd, is_simple_hnf(hnf_of(basis))

    try:
        _, simple = lattice_is_simple(generator, ring)
    except NotCoprimeError:
        return False, False
    return odd, simple


def run_category_experiment(
    n: int,
    t: int,
    trials: int,
    seed: int,
    hnf_ceiling: int = DEFAULT_HNF_CEILING,
    workers: int = 1,
    signed: bool = False,
    odd_strategy: str = "adjust",
) -> Dict[str, CategoryCounts]:
    """
    Classify ``trials`` generators for each algorithm.

    Args:
        n, t: Ring dimension and coefficient bit length
        trials: Generators per algorithm
        seed: Master seed; results depend on nothing else
        hnf_ceiling: Largest n classified with the exact HNF
        workers: Threads used to classify trials

    Returns:
        {"gh": CategoryCounts, "ours": CategoryCounts}
    """
    if trials < 0:
        raise InvalidParametersError("trials must be nonnegative")
    if workers < 1:
        raise InvalidParametersError("workers must be positive")
    params = KeygenParams(n=n, t=t, seed=seed, signed=signed, odd_strategy=odd_strategy)
    use_oracle = n <= hnf_ceiling
    classifier = "hnf" if use_oracle else "gcd"

    results: Dict[str, CategoryCounts] = {}
    for algorithm in ALGORITHMS:
        grid = {(o, s): 0 for o in (False, True) for s in (False, True)}

        def classify(trial: int) -> Tuple[bool, bool]:
            return classify_trial(algorithm, params, trial, use_oracle)

        trial_ids = range(1, trials + 1)
        if workers == 1:
            outcomes = list(map(classify, trial_ids))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(classify, trial_ids))
        for outcome in outcomes:
            grid[outcome] += 1

        counts = CategoryCounts(
            algorithm=algorithm,
            n=n,
            t=t,
            trials=trials,
            seed=seed,
            even_d_shnf=grid[(False, True)],
            even_d_nonshnf=grid[(False, False)],
            odd_d_shnf=grid[(True, True)],
            odd_d_nonshnf=grid[(True, False)],
            classifier=classifier,
        )
        logger.info(
            f"{algorithm}: n={n} t={t}: odd {counts.odd_total}/{trials}, "
            f"simple among odd {counts.odd_d_shnf}/{counts.odd_total} ({classifier})"
        )
        results[algorithm] = counts
    return results
