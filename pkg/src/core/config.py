"""
Centralized configuration for nzflow.
Loads from config.json with fallback defaults; ``NZFLOW_*`` environment
variables override file values (nested keys use ``__``).
"""

import json
import threading
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from .exceptions import ConfigError


class BruteForceConfig(BaseModel):
    """Limits for the exhaustive oracles."""

    max_nodes: int = Field(default=5_000_000, ge=1)  # search nodes before BudgetExceeded
    recommended_max_edges: int = Field(default=16, ge=1)


class LPConfig(BaseModel):
    """Settings for the rational LP layer."""

    max_cut_rounds: int = Field(default=200, ge=1)
    separation_brute_max_vertices: int = Field(default=16, ge=1)
    seed_singleton_cuts: bool = True


class NZ6Config(BaseModel):
    """Settings for the nowhere-zero 6-flow builder."""

    core_search_budget: int = Field(default=2_000_000, ge=1)
    brute_fallback_max_edges: int = Field(default=16, ge=0)


class BenchConfig(BaseModel):
    """Configuration for corpus benchmarking."""

    workers: int = Field(default=4, ge=1)
    timeout_seconds: float = Field(default=600.0, gt=0)


class OutputConfig(BaseModel):
    """Configuration for output files."""

    directory: str = "~/Documents/nzflow"  # bench spreadsheets land here


class ServerConfig(BaseModel):
    """Configuration for the MCP server in HTTP mode."""

    host: str = "127.0.0.1"
    port: int = 8765


class NZFlowConfig(BaseSettings):
    """Complete nzflow configuration."""

    model_config = SettingsConfigDict(
        env_prefix="NZFLOW_",
        env_nested_delimiter="__",
        extra="ignore",
    )

    debug: bool = False
    logging_level: str = "INFO"
    brute_force: BruteForceConfig = BruteForceConfig()
    lp: LPConfig = LPConfig()
    nz6: NZ6Config = NZ6Config()
    bench: BenchConfig = BenchConfig()
    output: OutputConfig = OutputConfig()
    server: ServerConfig = ServerConfig()

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # environment first so it wins over config.json values passed as init kwargs
        return env_settings, init_settings


class ConfigManager:
    """Manages loading and accessing configuration (thread-safe singleton)."""

    _instance: Optional["ConfigManager"] = None
    _config: Optional[NZFlowConfig] = None
    _lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._load_config()
        return cls._instance

    @classmethod
    def reset(cls):
        """Reset singleton (useful for testing)."""
        cls._instance = None
        cls._config = None

    def _load_config(self) -> None:
        """Load configuration from config.json or use defaults."""
        config_path = self._find_config_file()

        if config_path and config_path.exists():
            try:
                with open(config_path, "r", encoding="utf-8") as f:
                    config_dict = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(str(config_path), f"Invalid JSON: {e}")
            self._config = self._parse_config(config_dict, str(config_path))
        else:
            self._config = self._parse_config({}, "<defaults>")

    @staticmethod
    def _find_config_file() -> Optional[Path]:
        """Find config.json in common locations."""
        if Path("config.json").exists():
            return Path("config.json")

        core_dir = Path(__file__).parent
        src_dir = core_dir.parent
        for candidate in (core_dir, src_dir, src_dir.parent):
            if (candidate / "config.json").exists():
                return candidate / "config.json"

        return None

    @staticmethod
    def _parse_config(config_dict: Dict[str, Any], source: str) -> NZFlowConfig:
        """Parse raw config dictionary into NZFlowConfig."""
        try:
            return NZFlowConfig(**config_dict)
        except ValidationError as e:
            raise ConfigError(source, f"Parse error: {e.errors()[0]['msg']}")

    @property
    def config(self) -> NZFlowConfig:
        """Get the loaded configuration."""
        if self._config is None:
            self._load_config()
        assert self._config is not None
        return self._config

    def ensure_output_directory(self) -> Path:
        """Ensure output directory exists, create if needed."""
        output_dir = Path(self.config.output.directory).expanduser().resolve()
        output_dir.mkdir(parents=True, exist_ok=True)
        return output_dir


def get_config() -> NZFlowConfig:
    """Get global configuration instance."""
    return ConfigManager().config


def ensure_output_directory() -> Path:
    """Create and return the configured output directory."""
    return ConfigManager().ensure_output_directory()
