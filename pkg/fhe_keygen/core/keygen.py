"""
Key generation for Gentry's FHE scheme over Z[x]/(x^n + 1).

Two algorithms are implemented side by side:

- keygen_gh: the Gentry-Halevi procedure. Sample v, compute d and w_0,
  resample on even d, compute w_1 from x*v, resample unless w_1 is invertible
  modulo d, compute r = w_0/w_1 and resample unless r^n = -1 (mod d).
- keygen_ours: sample v with an odd coefficient sum, which forces an odd
  determinant, compute d and w_1, resample unless gcd(w_1, d) = 1, then compute
  w_0 and r. No r^n test is needed: once w_1 is invertible the HNF is simple
  and r^n = -1 (mod d) holds automatically.

Both return the public key (d, r) and an odd secret coefficient w_i.

Author: fhe-keygen developers
Version: 1.0
"""

import hashlib
import logging
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, List, Optional, Tuple, Union

from .errors import (
    HnfStructureError,
    InvalidParametersError,
    KeygenError,
    NotCoprimeError,
    RetriesExhaustedError,
)
from .hnf import hnf_of, simple_hnf_shape
from .ntheory import BarrettReducer, gcd_and_inverse, inverse_mod
from .resultant import w_coefficient
from .ring import Poly, RingParams, eval_mod, rotation_basis
from .timing import NULL_TIMER, PhaseTimer

logger = logging.getLogger(__name__)

ALGORITHMS = ("gh", "ours")
ODD_STRATEGIES = ("adjust", "doubled")
DEFAULT_MAX_RETRIES = 64
DEFAULT_HNF_CEILING = 64
_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class KeygenParams:
    """Inputs shared by both key generation algorithms."""

    n: int
    t: int
    seed: int = 0
    max_retries: int = DEFAULT_MAX_RETRIES
    signed: bool = False
    odd_strategy: str = "adjust"
    odd_search_limit: Optional[int] = None

    def __post_init__(self) -> None:
        RingParams(self.n)
        if self.t < 1:
            raise InvalidParametersError(f"bit length t must be >= 1, got {self.t}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise InvalidParametersError("seed must fit in 64 bits")
        if self.max_retries < 1:
            raise InvalidParametersError("max_retries must be positive")
        if self.odd_strategy not in ODD_STRATEGIES:
            raise InvalidParametersError(
                f"odd_strategy must be one of {ODD_STRATEGIES}, got {self.odd_strategy}"
            )
        if self.odd_search_limit is not None and self.odd_search_limit < 1:
            raise InvalidParametersError("odd_search_limit must be positive")

    @property
    def ring(self) -> RingParams:
        return RingParams(self.n)


@dataclass(frozen=True)
class Generator:
    """The polynomial v(x) generating an ideal lattice."""

    v: Poly

    def coefficients(self, n: int) -> List[int]:
        return self.v.padded(n)


@dataclass(frozen=True)
class PublicKey:
    """The pair (d, r) standing for the simple HNF of the lattice."""

    d: int
    r: int


@dataclass(frozen=True)
class SecretKey:
    """An odd w with w = w_index (mod d)."""

    w: int
    index: int
    d: int


@dataclass(frozen=True)
class KeygenResult:
    """Keys plus the bookkeeping the harness needs."""

    algorithm: str
    public_key: PublicKey
    secret_key: SecretKey
    trials: int
    generator: Generator


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    """Outcome of validate_key: one named entry per check."""

    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)


def derive_rng(seed: int, *labels: Union[int, str]) -> random.Random:
    """Deterministic Random instance for (seed, labels...)."""
    material = ":".join(str(x) for x in (seed,) + labels).encode("ascii")
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _draw(rng: random.Random, bits: int, signed: bool) -> int:
    value = rng.getrandbits(bits) if bits > 0 else 0
    if signed and rng.getrandbits(1):
        value = -value
    return value


def sample_generator(params: KeygenParams, rng: random.Random) -> Generator:
    """Draw each v_i uniformly from [0, 2^t) (or (-2^t, 2^t) when signed)."""
    coeffs = [_draw(rng, params.t, params.signed) for _ in range(params.n)]
    return Generator(Poly(tuple(coeffs)))


def parity_of_determinant(v: Union[Generator, Poly], params: RingParams) -> int:
    """det(L) mod 2, read off as v_0 + ... + v_(n-1) mod 2."""
    poly = v.v if isinstance(v, Generator) else v
    return sum(poly.padded(params.n)) & 1


def sample_odd_generator(params: KeygenParams, rng: random.Random) -> Generator:
    """
    Sample a generator whose lattice has an odd determinant.

    "adjust" samples as sample_generator and, when the coefficient sum is even,
    moves v_0 by one (up, unless that would leave the t-bit range). "doubled"
    returns 2*u(x) + 1 for u sampled at t - 1 bits.
    """
    if params.odd_strategy == "doubled":
        u = [_draw(rng, params.t - 1, params.signed) for _ in range(params.n)]
        coeffs = [2 * c for c in u]
        coeffs[0] += 1
        return Generator(Poly(tuple(coeffs)))

    coeffs = sample_generator(params, rng).coefficients(params.n)
    if sum(coeffs) & 1 == 0:
        if coeffs[0] + 1 < 1 << params.t:
            coeffs[0] += 1
        else:
            coeffs[0] -= 1
    return Generator(Poly(tuple(coeffs)))


def simple_hnf_condition(w_i: int, d: int) -> bool:
    """
    True iff gcd(w_i, d) = 1, which holds exactly when the HNF is simple.

    One index suffices: either every coefficient of w is coprime to d or
    none is.
    """
    if d <= 0:
        raise InvalidParametersError(f"determinant must be positive, got {d}")
    return gcd(w_i, d) == 1


def lattice_is_simple(
    v: Union[Generator, Poly], params: RingParams
) -> Tuple[int, bool]:
    """
    Decide from w_0 alone whether the lattice of v has a simple HNF.

    The quotient Z^n/L is cyclic at an odd prime p exactly when p does not
    divide w_0. At 2 it is cyclic exactly when x + 1 divides v mod 2 at most
    once, that is when v(1) or v'(1) is odd. The latter reduces to the sum of
    the odd-index coefficients.

    Returns:
        (d, simple)

    Raises:
        InvalidParametersError: For the zero polynomial
        NotCoprimeError: If v shares a factor with x^n + 1 (d = 0)
    """
    poly = v.v if isinstance(v, Generator) else v
    out = w_coefficient(poly, params, 0)
    d = out.d
    odd_part = d >> ((d & -d).bit_length() - 1)
    if d % 2 == 0 and sum(poly.padded(params.n)[1::2]) % 2 == 0:
        return d, False
    return d, gcd(out.w(0), odd_part) == 1


def compute_r(w_0: int, w_1: int, d: int) -> int:
    """
    r = w_0 / w_1 mod d, in [0, d).

    Raises:
        NotInvertibleError: If gcd(w_1, d) != 1
    """
    if d <= 0:
        raise InvalidParametersError(f"determinant must be positive, got {d}")
    return w_0 * inverse_mod(w_1, d) % d


def _chain(w_0: int, w_1: int, r: int, d: int, n: int) -> Iterator[Tuple[int, int]]:
    yield 0, w_0 % d
    yield 1, w_1 % d
    # w_(n-1) = -r*w_0 and w_i = r*w_(i+1) for i < n - 1
    w = -r * w_0 % d
    for index in range(n - 1, 1, -1):
        yield index, w
        w = r * w % d


def find_odd_w(
    w_0: int,
    w_1: int,
    r: int,
    d: int,
    n: int = 2,
    search_limit: Optional[int] = None,
) -> SecretKey:
    """
    Pick an odd secret coefficient.

    Walks w_0, w_1, w_(n-1), w_(n-2), ... through the chain w_i = r*w_(i+1)
    and returns the first whose representative in [0, d) is odd. Since d is
    odd, [w_0]_d - d is odd whenever [w_0]_d is not, which is the fallback.

    Raises:
        InvalidParametersError: If d is not a positive odd number
    """
    if d <= 0 or d % 2 == 0:
        raise InvalidParametersError("the determinant must be positive and odd")
    limit = search_limit if search_limit is not None else n
    for count, (index, value) in enumerate(_chain(w_0, w_1, r, d, n)):
        if count >= limit:
            break
        if value & 1:
            return SecretKey(w=value, index=index, d=d)
    return SecretKey(w=w_0 % d - d, index=0, d=d)


def _trial_rng(
    params: KeygenParams, rng: Optional[random.Random], trial: int
) -> random.Random:
    return rng if rng is not None else derive_rng(params.seed, trial)


def keygen_gh(
    params: KeygenParams,
    rng: Optional[random.Random] = None,
    timer: PhaseTimer = NULL_TIMER,
) -> KeygenResult:
    """
    Gentry-Halevi key generation.

    Args:
        params: Dimension, bit length, seed and retry budget
        rng: Random source for every trial; by default trial k draws from
            derive_rng(params.seed, k)
        timer: Receives the res/xgcd/mul/pmod/oddcoe phase timings

    Returns:
        KeygenResult with the number of candidates sampled

    Raises:
        RetriesExhaustedError: After params.max_retries candidates
    """
    ring = params.ring
    n = params.n
    for trial in range(1, params.max_retries + 1):
        generator = sample_generator(params, _trial_rng(params, rng, trial))
        if generator.v.is_zero():
            logger.debug(f"gh trial {trial}: zero generator")
            continue
        try:
            with timer.phase("res"):
                out = w_coefficient(generator.v, ring, 0)
        except NotCoprimeError:
            logger.debug(f"gh trial {trial}: generator not coprime to x^n+1")
            continue
        d, w_0 = out.d, out.w(0)
        if d % 2 == 0:
            logger.debug(f"gh trial {trial}: even determinant")
            continue
        if d == 1:
            logger.debug(f"gh trial {trial}: unit generator")
            continue

        with timer.phase("res"):
            w_1 = w_coefficient(generator.v.shift(1, ring), ring, 0).w(0)
        with timer.phase("xgcd"):
            _, inverse = gcd_and_inverse(w_1, d)
        if inverse is None:
            logger.debug(f"gh trial {trial}: w_1 not invertible modulo d")
            continue
        with timer.phase("mul"):
            reducer = BarrettReducer(d)
            r = reducer.mul(w_0, inverse)
        with timer.phase("pmod"):
            root_ok = reducer.pow(r, n) == d - 1
        if not root_ok:
            logger.debug(f"gh trial {trial}: r^n != -1 mod d")
            continue

        with timer.phase("oddcoe"):
            secret = find_odd_w(w_0, w_1, r, d, n, params.odd_search_limit)
        logger.info(f"gh: key for n={n}, t={params.t} after {trial} trial(s)")
        return KeygenResult("gh", PublicKey(d, r), secret, trial, generator)

    raise RetriesExhaustedError("gh", params.max_retries)


def keygen_ours(
    params: KeygenParams,
    rng: Optional[random.Random] = None,
    timer: PhaseTimer = NULL_TIMER,
) -> KeygenResult:
    """
    Key generation with an odd determinant by construction.

    Same arguments and result as keygen_gh. The only resampling condition is
    gcd(w_1, d) != 1.
    """
    ring = params.ring
    n = params.n
    for trial in range(1, params.max_retries + 1):
        generator = sample_odd_generator(params, _trial_rng(params, rng, trial))
        # an odd determinant is never zero, so v is coprime to x^n + 1
        with timer.phase("res"):
            out = w_coefficient(generator.v, ring, 1)
        d, w_1 = out.d, out.w(1)
        if d == 1:
            logger.debug(f"ours trial {trial}: unit generator")
            continue
        with timer.phase("xgcd"):
            _, inverse = gcd_and_inverse(w_1, d)
        if inverse is None:
            logger.debug(f"ours trial {trial}: gcd(w_1, d) != 1, HNF not simple")
            continue

        with timer.phase("res"):
            w_0 = w_coefficient(generator.v, ring, 0).w(0)
        with timer.phase("mul"):
            r = BarrettReducer(d).mul(w_0, inverse)
        with timer.phase("oddcoe"):
            secret = find_odd_w(w_0, w_1, r, d, n, params.odd_search_limit)
        logger.info(f"ours: key for n={n}, t={params.t} after {trial} trial(s)")
        return KeygenResult("ours", PublicKey(d, r), secret, trial, generator)

    raise RetriesExhaustedError("ours", params.max_retries)


def generate_keys(
    algorithm: str,
    params: KeygenParams,
    rng: Optional[random.Random] = None,
    timer: PhaseTimer = NULL_TIMER,
) -> KeygenResult:
    """Run keygen_gh ("gh") or keygen_ours ("ours")."""
    if algorithm == "gh":
        return keygen_gh(params, rng, timer)
    if algorithm == "ours":
        return keygen_ours(params, rng, timer)
    raise InvalidParametersError(
        f"algorithm must be one of {ALGORITHMS}, got {algorithm}"
    )


def validate_key(
    pk: PublicKey,
    sk: SecretKey,
    v: Union[Generator, Poly],
    params: RingParams,
    hnf_ceiling: int = DEFAULT_HNF_CEILING,
) -> ValidationReport:
    """
    Check a key pair against its generator.

    Failed checks are recorded by name in the report; nothing is raised.
    Checks: d_odd, r_range, r_pow_n, v_at_r, w_odd, w_congruence and, for
    n <= hnf_ceiling, simple_hnf (the exact HNF equals the simple HNF built
    from (d, r)).
    """
    poly = v.v if isinstance(v, Generator) else v
    n = params.n
    d, r = pk.d, pk.r
    report = ValidationReport()

    report.add("d_odd", d % 2 == 1, f"d mod 2 = {d % 2}")
    report.add("r_range", d > 1 and 0 < r < d, "need d > 1 and 0 < r < d")
    report.add(
        "r_pow_n",
        d > 1 and BarrettReducer(d).pow(r, n) == d - 1,
        "r^n must be -1 modulo d",
    )
    report.add(
        "v_at_r",
        d > 0 and eval_mod(poly, r, d) == 0,
        "v(r) must vanish modulo d",
    )
    report.add("w_odd", sk.w % 2 == 1, f"w mod 2 = {sk.w % 2}")

    congruent = False
    detail = ""
    if sk.d != d:
        detail = "secret key modulus differs from public d"
    elif not 0 <= sk.index < n:
        detail = f"index {sk.index} outside [0, {n})"
    else:
        try:
            out = w_coefficient(poly, params, sk.index)
            if out.d != d:
                detail = "public d is not the lattice determinant"
            else:
                congruent = (sk.w - out.w(sk.index)) % d == 0
                if not congruent:
                    detail = f"w is not congruent to w_{sk.index} modulo d"
        except (KeygenError, ValueError) as e:
            detail = str(e)
    report.add("w_congruence", congruent, detail)

    if n <= hnf_ceiling:
        try:
            h = hnf_of(rotation_basis(poly, params))
            expected = simple_hnf_shape(d, r, n) if d > 1 and 0 <= r < d else None
            report.add(
                "simple_hnf",
                expected is not None and h == expected,
                f"HNF diagonal starts {h.diagonal()[:3]}",
            )
        except (KeygenError, HnfStructureError, ValueError) as e:
            report.add("simple_hnf", False, str(e))

    if report.passed:
        logger.debug(f"Key validated for n={n}")
    else:
        logger.info(f"Key validation failed: {', '.join(report.failed())}")
    return report
