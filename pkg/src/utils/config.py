"""Configuration management for solver defaults."""

import json
import logging
from pathlib import Path
from typing import Optional

logger = logging.getLogger("MOCRSolver")

CONFIG_DIR = Path.home() / ".mocr_solver"


class Config:
    """Manages solver configuration stored as JSON."""

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize configuration manager.

        Args:
            config_path: Optional path to config file (defaults to ~/.mocr_solver/config.json)
        """
        if config_path:
            self.config_path = Path(config_path)
        else:
            self.config_path = CONFIG_DIR / "config.json"

        self.config = self._load_config()

    def _load_config(self) -> dict:
        """Load configuration from file.

        Returns:
            Configuration dictionary
        """
        if not self.config_path.exists():
            return self._get_default_config()

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)
                # Merge with defaults to ensure all keys exist
                defaults = self._get_default_config()
                defaults.update(config)
                return defaults
        except (json.JSONDecodeError, IOError) as e:
            logger.warning(f"Failed to load config {self.config_path}: {e}")
            return self._get_default_config()

    def _get_default_config(self) -> dict:
        """Get default configuration.

        Returns:
            Default configuration dictionary
        """
        return {
            'threads': None,  # None uses every core
            'precision': 6,  # Decimal places in rendered reports
            'bruteforce_budget': 10 ** 6,  # Max paths for the brute-force oracle
            'include_timings': True,  # Phase timings in reports
            'clip_ratios': False,  # Show ratios met with (1,...,1)
            'random_max_payoff': 100,  # Largest payoff component of random games
            'log_to_file': False,  # Daily log file under ~/.mocr_solver/logs
        }

    def save_config(self):
        """Save configuration to file."""
        try:
            self.config_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2, ensure_ascii=False)
        except IOError as e:
            logger.error(f"Failed to save config {self.config_path}: {e}")

    def get(self, key: str, default=None):
        """Get a configuration value.

        Args:
            key: Configuration key
            default: Default value if key doesn't exist

        Returns:
            Configuration value
        """
        return self.config.get(key, default)

    def set(self, key: str, value):
        """Set a configuration value and save.

        Args:
            key: Configuration key
            value: Configuration value
        """
        self.config[key] = value
        self.save_config()

    def get_threads(self) -> Optional[int]:
        return self.config.get('threads')

    def set_threads(self, threads: Optional[int]):
        self.set('threads', threads)

    def get_precision(self) -> int:
        """Get the decimal precision of rendered values.

        Returns:
            Number of decimal places
        """
        return int(self.config.get('precision', 6))

    def set_precision(self, precision: int):
        if precision < 0:
            raise ValueError(f"Precision must be >= 0, got {precision}")
        self.set('precision', precision)

    def get_bruteforce_budget(self) -> int:
        return int(self.config.get('bruteforce_budget', 10 ** 6))

    def get_include_timings(self) -> bool:
        return bool(self.config.get('include_timings', True))

    def get_clip_ratios(self) -> bool:
        return bool(self.config.get('clip_ratios', False))

    def get_random_max_payoff(self) -> int:
        return int(self.config.get('random_max_payoff', 100))

    def get_log_to_file(self) -> bool:
        """Get file logging setting.

        Returns:
            True if logs are also written to a daily file
        """
        return bool(self.config.get('log_to_file', False))
