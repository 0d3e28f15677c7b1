"""
Text key files.

A full key file has six lines, n, d, r, w, i and seed, written as
``key=<decimal>``. Public key files leave out w and i.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Union

from .errors import KeyFileError
from .keygen import KeygenResult, PublicKey, SecretKey

logger = logging.getLogger(__name__)

FULL_KEYS = ("n", "d", "r", "w", "i", "seed")
PUBLIC_KEYS = ("n", "d", "r", "seed")


@dataclass(frozen=True)
class KeyRecord:
    """Everything a key file holds."""

    n: int
    d: int
    r: int
    seed: int
    w: Optional[int] = None
    index: Optional[int] = None

    @classmethod
    def from_result(cls, result: KeygenResult, n: int, seed: int) -> "KeyRecord":
        return cls(
            n=n,
            d=result.public_key.d,
            r=result.public_key.r,
            seed=seed,
            w=result.secret_key.w,
            index=result.secret_key.index,
        )

    @property
    def is_public(self) -> bool:
        return self.w is None

    @property
    def public_key(self) -> PublicKey:
        return PublicKey(self.d, self.r)

    @property
    def secret_key(self) -> SecretKey:
        if self.w is None or self.index is None:
            raise KeyFileError("public key file carries no secret key")
        return SecretKey(w=self.w, index=self.index, d=self.d)

    def public(self) -> "KeyRecord":
        return KeyRecord(n=self.n, d=self.d, r=self.r, seed=self.seed)


def format_key(record: KeyRecord, public: bool = False) -> str:
    """Render a record; public=True (or a public record) drops w and i."""
    values: Dict[str, int] = {"n": record.n, "d": record.d, "r": record.r}
    if not (public or record.is_public):
        assert record.w is not None and record.index is not None
        values["w"] = record.w
        values["i"] = record.index
    values["seed"] = record.seed
    return "".join(f"{k}={v}\n" for k, v in values.items())


def _parse_decimal(text: str, line: int) -> int:
    body = text[1:] if text[:1] == "-" else text
    if not body or not body.isdigit() or not body.isascii():
        raise KeyFileError(f"not a decimal integer: {text!r}", line)
    return int(text)


def parse_key(text: str) -> KeyRecord:
    """
    Parse a key file.

    Raises:
        KeyFileError: On unknown, duplicate or missing keys and on malformed
            values, naming the line
    """
    values: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise KeyFileError(f"expected key=value, got {line!r}", number)
        key = key.strip()
        if key not in FULL_KEYS:
            raise KeyFileError(f"unknown key {key!r}", number)
        if key in values:
            raise KeyFileError(f"duplicate key {key!r}", number)
        values[key] = _parse_decimal(value.strip(), number)

    has_secret = "w" in values or "i" in values
    required = FULL_KEYS if has_secret else PUBLIC_KEYS
    missing = [k for k in required if k not in values]
    if missing:
        raise KeyFileError(f"missing key(s): {', '.join(missing)}")

    return KeyRecord(
        n=values["n"],
        d=values["d"],
        r=values["r"],
        seed=values["seed"],
        w=values.get("w"),
        index=values.get("i"),
    )


def write_key_file(
    path: Union[str, Path], record: KeyRecord, public: bool = False
) -> None:
    target = Path(path)
    if target.parent != Path(""):
        target.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps the \n terminators on every platform
    with open(target, "w", encoding="ascii", newline="") as f:
        f.write(format_key(record, public=public))
    logger.debug(f"Wrote {'public ' if public else ''}key file {target}")


def read_key_file(path: Union[str, Path]) -> KeyRecord:
    try:
        with open(path, "r", encoding="ascii") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise KeyFileError(f"{path}: key files are plain ASCII") from e
    return parse_key(text)
