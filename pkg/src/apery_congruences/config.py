# =============================================================================
# Apery Congruences - Configuration Management
# =============================================================================
# This module manages user-level defaults for the CLI using a JSON file
# stored in the user's data directory.
#
# Key Features:
#   - Thread-safe singleton pattern ensures single config instance
#   - Automatic directory and file creation on first run
#   - Default values for all settings
#   - Validated access via properties
#   - APERY_JOBS overrides the default parallelism
#   - APERY_CONFIG_DIR relocates the config directory
#
# Configuration File Location:
#   Linux: ~/.local/share/apery_congruences/config.json
#   Windows: %APPDATA%/apery_congruences/config.json
#   macOS: ~/Library/Application Support/apery_congruences/config.json
#
# Usage Example:
#   config = Config.get_instance()
#   jobs = config.jobs
#   config.prime_power_limit = 100_000
#   config.save()
#
# Sweep settings given on the command line or in a --config file always win
# over these defaults.
# =============================================================================

import json
import logging
import os
import platform
from pathlib import Path
from threading import Lock
from typing import Any, Dict, Optional

# Configure module logger
logger = logging.getLogger(__name__)

APP_DIR_NAME = "apery_congruences"


class Config:
    """
    Thread-safe singleton configuration manager.

    Attributes:
        jobs: Default number of worker processes
        prime_power_limit: Default upper bound for p^a
        chunk_size: Default number of outer-axis values per work chunk
        log_file: JSON log file (None = apery_congruences.log in the config dir)
        lagrange_seed: Seed for the sampled rational arguments
        lagrange_samples: Rational arguments sampled per m
    """

    # Class-level attributes for singleton pattern
    _instance: Optional["Config"] = None
    _lock: Lock = Lock()

    _config_dir: Path
    _config_file: Path
    _settings: Dict[str, Any]

    def __new__(cls) -> "Config":
        # Double-checked locking: only the first caller takes the lock
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        # __init__ runs on every Config() call; initialize only once
        if hasattr(self, "_initialized"):
            return

        self._config_dir = self._get_user_data_dir()
        self._config_file = self._config_dir / "config.json"
        self._settings: Dict[str, Any] = {}

        self._ensure_config_exists()
        self.load()

        self._initialized = True
        logger.debug(f"Config initialized from {self._config_file}")

    @classmethod
    def get_instance(cls) -> "Config":
        """Get the singleton Config instance."""
        return cls()

    @classmethod
    def reset_instance(cls) -> None:
        """Forget the singleton so the next call reloads (tests)."""
        with cls._lock:
            cls._instance = None

    def _get_user_data_dir(self) -> Path:
        """
        Get the platform-appropriate user data directory.

        APERY_CONFIG_DIR, when set, is used as is.
        """
        override = os.environ.get("APERY_CONFIG_DIR")
        if override:
            config_dir = Path(override)
        else:
            system = platform.system()
            if system == "Linux":
                base = Path.home() / ".local" / "share"
            elif system == "Windows":
                base = Path.home() / "AppData" / "Roaming"
            elif system == "Darwin":
                base = Path.home() / "Library" / "Application Support"
            else:
                base = Path.home() / ".config"
            config_dir = base / APP_DIR_NAME

        config_dir.mkdir(parents=True, exist_ok=True)
        return config_dir

    def _get_defaults(self) -> Dict[str, Any]:
        return {
            # Harness
            "jobs": 1,
            "prime_power_limit": 10_000,
            "chunk_size": 16,
            # Logging
            "log_file": None,  # None = apery_congruences.log in the config dir
            # Sampled identity suites
            "lagrange_seed": 20100,
            "lagrange_samples": 10,
        }

    def _ensure_config_exists(self) -> None:
        if not self._config_file.exists():
            logger.info(f"Writing default configuration to {self._config_file}")
            self._settings = self._get_defaults()
            self.save()

    def load(self) -> None:
        """
        Load configuration from the JSON file, merged over the defaults.

        Raises:
            RuntimeError: If the config file is corrupted or unreadable
        """
        try:
            loaded = json.loads(self._config_file.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            logger.error(f"{self._config_file} is corrupted: {e}")
            raise RuntimeError(
                f"{self._config_file} is corrupted ({e}); delete it to restore "
                "the defaults"
            ) from None
        except OSError as e:
            logger.error(f"Cannot read {self._config_file}: {e}")
            raise RuntimeError(f"Cannot read {self._config_file}: {e}") from None
        if not isinstance(loaded, dict):
            raise RuntimeError(f"{self._config_file} is corrupted: not a JSON object")

        # Missing keys fall back to defaults
        self._settings = {**self._get_defaults(), **loaded}
        logger.debug(f"Loaded {self._config_file}")

    def save(self) -> None:
        """
        Save current configuration to the JSON file.

        Raises:
            RuntimeError: If the config file cannot be written
        """
        try:
            self._config_file.write_text(
                json.dumps(self._settings, indent=2) + "\n", encoding="utf-8"
            )
        except OSError as e:
            logger.error(f"Cannot write {self._config_file}: {e}")
            raise RuntimeError(f"Cannot write {self._config_file}: {e}") from None
        logger.debug(f"Saved {self._config_file}")

    # =========================================================================
    # Property Accessors
    # =========================================================================

    @property
    def jobs(self) -> int:
        """Default parallelism; APERY_JOBS wins over the file."""
        env = os.environ.get("APERY_JOBS")
        if env:
            try:
                value = int(env)
                if value >= 1:
                    return value
            except ValueError:
                pass
            logger.warning(f"Ignoring invalid APERY_JOBS={env!r}")
        return int(self._settings.get("jobs", 1))

    @jobs.setter
    def jobs(self, value: int) -> None:
        """
        Set the default parallelism.

        Raises:
            ValueError: If value is less than 1
        """
        if value < 1:
            raise ValueError(f"Invalid jobs: {value}. Must be at least 1")
        self._settings["jobs"] = value

    @property
    def prime_power_limit(self) -> int:
        return int(self._settings.get("prime_power_limit", 10_000))

    @prime_power_limit.setter
    def prime_power_limit(self, value: int) -> None:
        if value < 2:
            raise ValueError(f"Invalid prime_power_limit: {value}. Must be >= 2")
        self._settings["prime_power_limit"] = value

    @property
    def chunk_size(self) -> int:
        return int(self._settings.get("chunk_size", 16))

    @chunk_size.setter
    def chunk_size(self, value: int) -> None:
        if value < 1:
            raise ValueError(f"Invalid chunk_size: {value}. Must be positive")
        self._settings["chunk_size"] = value

    @property
    def log_file(self) -> Path:
        """The JSON log file (custom or default)."""
        value = self._settings.get("log_file")
        if value is None:
            return self._config_dir / "apery_congruences.log"
        return Path(value)

    @log_file.setter
    def log_file(self, value: Optional[Path]) -> None:
        self._settings["log_file"] = None if value is None else str(value)

    @property
    def lagrange_seed(self) -> int:
        return int(self._settings.get("lagrange_seed", 20100))

    @lagrange_seed.setter
    def lagrange_seed(self, value: int) -> None:
        self._settings["lagrange_seed"] = int(value)

    @property
    def lagrange_samples(self) -> int:
        return int(self._settings.get("lagrange_samples", 10))

    @lagrange_samples.setter
    def lagrange_samples(self, value: int) -> None:
        """
        Set the number of sampled rationals per m.

        Raises:
            ValueError: If value is not positive
        """
        if value < 1:
            raise ValueError(f"Invalid lagrange_samples: {value}. Must be positive")
        self._settings["lagrange_samples"] = value

    def reset_to_defaults(self) -> None:
        """Reset all settings to their defaults (call save() afterwards)."""
        self._settings = self._get_defaults()
        logger.info("Configuration reset to defaults")

    def get_config_dir(self) -> Path:
        return self._config_dir
