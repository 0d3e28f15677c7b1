"""
Configuration management for fhe-keygen.

Defaults live in DEFAULT_CONFIG; a YAML file (``--config`` or
``<project root>/.fhe-keygen/config.yml``) is deep-merged over them, then
FHE_KEYGEN_* environment variables are applied.

Author: fhe-keygen developers
Version: 1.0
"""

import copy
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import jsonschema
import yaml

from .errors import ConfigurationError
from .keygen import ODD_STRATEGIES, KeygenParams

# Set up logging
logger = logging.getLogger(__name__)

CONFIG_DIR_NAME = ".fhe-keygen"
CONFIG_FILE_NAME = "config.yml"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def get_project_root(start: Optional[Path] = None) -> Path:
    """
    Find the project root by walking up from ``start`` (default: cwd).

    A directory holding .fhe-keygen wins; otherwise the first directory with
    .git, pyproject.toml or setup.py; otherwise ``start`` itself.
    """
    current = start or Path.cwd()
    parents = [current] + list(current.parents)

    for parent in parents:
        if (parent / CONFIG_DIR_NAME).exists():
            return parent

    root_markers = [".git", "pyproject.toml", "setup.py"]
    for parent in parents:
        if any((parent / marker).exists() for marker in root_markers):
            return parent

    return current


DEFAULT_CONFIG: Dict[str, Any] = {
    "keygen": {
        "max_retries": 64,
        "signed": False,
        "odd_strategy": "adjust",
        "odd_search_limit": None,
    },
    "oracle": {
        "hnf_ceiling": 64,
    },
    "ring": {
        "kronecker_threshold": 16,
    },
    "experiment": {
        "workers": 1,
    },
    "logging": {
        "level": "WARNING",
        "file": None,
        "format": LOG_FORMAT,
    },
}

_positive_int = {"type": "integer", "minimum": 1}

CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "keygen": {
            "type": "object",
            "properties": {
                "max_retries": _positive_int,
                "signed": {"type": "boolean"},
                "odd_strategy": {"enum": list(ODD_STRATEGIES)},
                "odd_search_limit": {"anyOf": [_positive_int, {"type": "null"}]},
            },
        },
        "oracle": {
            "type": "object",
            "properties": {"hnf_ceiling": {"type": "integer", "minimum": 0}},
        },
        "ring": {
            "type": "object",
            "properties": {"kronecker_threshold": _positive_int},
        },
        "experiment": {
            "type": "object",
            "properties": {"workers": _positive_int},
        },
        "logging": {
            "type": "object",
            "properties": {
                "level": {
                    "enum": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
                },
                "file": {"type": ["string", "null"]},
                "format": {"type": "string"},
            },
        },
    },
}

# Environment variable -> (dotted key, converter)
ENV_OVERRIDES = {
    "FHE_KEYGEN_LOG_LEVEL": ("logging.level", str.upper),
    "FHE_KEYGEN_MAX_RETRIES": ("keygen.max_retries", int),
    "FHE_KEYGEN_HNF_CEILING": ("oracle.hnf_ceiling", int),
    "FHE_KEYGEN_WORKERS": ("experiment.workers", int),
}


class KeygenConfig:
    """Configuration manager with YAML file and environment variable support."""

    def __init__(
        self,
        config_file: Optional[Union[str, Path]] = None,
        project_root: Optional[Path] = None,
    ):
        """
        Initialize configuration manager.

        Args:
            config_file: Optional explicit configuration file; must exist
            project_root: Root used to find .fhe-keygen/config.yml when no
                file is given

        Raises:
            ConfigurationError: If the file is missing (explicit path only),
                unreadable or fails schema validation
        """
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        self.source: Optional[Path] = None

        if config_file is not None:
            path = Path(config_file)
            if not path.exists():
                raise ConfigurationError(f"config file not found: {path}")
        else:
            root = project_root or get_project_root()
            path = root / CONFIG_DIR_NAME / CONFIG_FILE_NAME

        self._load_config_file(path)
        self._apply_environment_variables()
        self._validate(self._config, "effective configuration")

    def _load_config_file(self, config_path: Path) -> None:
        """Load configuration from file if it exists."""
        if not config_path.exists():
            logger.debug(f"Config file not found: {config_path}")
            return
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                file_config = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"cannot read {config_path}: {e}") from e
        if not isinstance(file_config, dict):
            raise ConfigurationError(f"{config_path}: top level must be a mapping")

        self._validate(file_config, str(config_path))
        logger.debug(f"Loaded file config: {file_config}")
        self._merge_config(self._config, file_config)
        self.source = config_path
        logger.info(f"Loaded configuration from {config_path}")

    def _apply_environment_variables(self) -> None:
        """Apply environment variable overrides."""
        for name, (key, convert) in ENV_OVERRIDES.items():
            raw = os.environ.get(name)
            if not raw:
                continue
            try:
                value = convert(raw)
            except ValueError as e:
                raise ConfigurationError(f"{name}={raw!r} is not valid") from e
            self._set(key, value)
            logger.debug(f"{name} overrides {key}")

    @staticmethod
    def _validate(config: Dict[str, Any], source: str) -> None:
        try:
            jsonschema.validate(config, CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            location = ".".join(str(p) for p in e.absolute_path) or "<root>"
            raise ConfigurationError(f"{source}: {location}: {e.message}") from e

    def _merge_config(self, base: Dict[str, Any], override: Dict[str, Any]) -> None:
        """Recursively merge configuration dictionaries."""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._merge_config(base[key], value)
            else:
                base[key] = value

    def _set(self, key: str, value: Any) -> None:
        *parents, leaf = key.split(".")
        node = self._config
        for k in parents:
            node = node.setdefault(k, {})
        node[leaf] = value

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Args:
            key: Configuration key (e.g., 'keygen.max_retries')
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value: Any = self._config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def keygen_params(
        self, n: int, t: int, seed: int = 0, **overrides: Any
    ) -> KeygenParams:
        """KeygenParams for (n, t, seed) with the configured keygen defaults."""
        options: Dict[str, Any] = {
            "max_retries": self.get("keygen.max_retries"),
            "signed": self.get("keygen.signed"),
            "odd_strategy": self.get("keygen.odd_strategy"),
            "odd_search_limit": self.get("keygen.odd_search_limit"),
        }
        options.update({k: v for k, v in overrides.items() if v is not None})
        return KeygenParams(n=n, t=t, seed=seed, **options)

    @property
    def hnf_ceiling(self) -> int:
        return int(self.get("oracle.hnf_ceiling"))

    @property
    def workers(self) -> int:
        return int(self.get("experiment.workers"))

    @property
    def kronecker_threshold(self) -> int:
        return int(self.get("ring.kronecker_threshold"))


# Global configuration instance
_config_instance: Optional[KeygenConfig] = None


def get_config(config_file: Optional[Union[str, Path]] = None) -> KeygenConfig:
    """Get the global configuration instance."""
    global _config_instance
    if _config_instance is None or config_file is not None:
        _config_instance = KeygenConfig(config_file=config_file)
    return _config_instance


def reset_config() -> None:
    """Forget the global instance (tests and repeated CLI invocations)."""
    global _config_instance
    _config_instance = None


def setup_logging(config: Optional[KeygenConfig] = None, verbose: bool = False) -> None:
    """Set up logging: stderr always, plus logging.file when configured."""
    if config is None:
        config = get_config()

    level = "DEBUG" if verbose else config.get("logging.level", "WARNING")
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

    log_file = config.get("logging.file")
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path))

    logging.basicConfig(
        level=getattr(logging, level),
        format=config.get("logging.format", LOG_FORMAT),
        handlers=handlers,
        force=True,  # Override any existing configuration
    )
