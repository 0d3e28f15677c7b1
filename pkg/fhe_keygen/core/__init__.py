"""
Core functionality for fhe-keygen.

Ring arithmetic, resultants, the HNF oracle, key generation and the
configuration layer.
"""

from .config import KeygenConfig
from .hnf import HnfMatrix, hnf_of
from .keygen import (
    KeygenParams,
    KeygenResult,
    PublicKey,
    SecretKey,
    generate_keys,
    keygen_gh,
    keygen_ours,
    validate_key,
)
from .resultant import resultant_and_w
from .ring import Poly, RingParams

__all__ = [
    "HnfMatrix",
    "KeygenConfig",
    "KeygenParams",
    "KeygenResult",
    "Poly",
    "PublicKey",
    "RingParams",
    "SecretKey",
    "generate_keys",
    "hnf_of",
    "keygen_gh",
    "keygen_ours",
    "resultant_and_w",
    "validate_key",
]
