"""
fhe-keygen - key generation for Gentry's fully homomorphic encryption scheme.

Implements the Gentry-Halevi key generation over Z[x]/(x^n + 1) and a faster
variant that fixes the parity of the lattice determinant up front, together
with the exact oracles (Sylvester resultant, Hermite Normal Form) used to
check both.

Version: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "fhe-keygen developers"
__description__ = (
    "Key generation for Gentry's FHE scheme with fast odd-determinant sampling"
)

# Package-level imports
from .core.config import KeygenConfig
from .core.keygen import (
    KeygenParams,
    generate_keys,
    keygen_gh,
    keygen_ours,
    validate_key,
)

__all__ = [
    "KeygenConfig",
    "KeygenParams",
    "generate_keys",
    "keygen_gh",
    "keygen_ours",
    "validate_key",
    "__version__",
]
