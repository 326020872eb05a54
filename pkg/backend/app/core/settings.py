"""
Application configuration and settings management.

This module provides:
1. Environment-based configuration
2. Type-safe settings validation
3. Default values for all settings
4. Environment variable overrides (prefix CHIPGAME_)
5. .env file support

Settings are organized into categories:
- Solver resources
- Match play
- Output locations
- Logging

All settings can be overridden by:
1. Environment variables (e.g. CHIPGAME_BUDGET=500000)
2. .env file
3. Command line flags for a single invocation
"""

from pydantic import Field, ConfigDict
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Chip game settings management using Pydantic.

    Settings can be accessed as attributes:
        settings.BUDGET
        settings.LOG_LEVEL

    Environment variables take precedence over defaults:
        export CHIPGAME_BUDGET=500000

    Configuration is loaded in this order:
    1. Default values
    2. .env file
    3. Environment variables
    """

    # Solver settings
    BUDGET: int = Field(
        default=2_000_000,
        description="Maximum number of memo entries a solver or verifier may create",
        ge=1,
        examples=[2_000_000, 50_000_000],
    )
    RECURSION_LIMIT: int = Field(
        default=20_000,
        description="Interpreter recursion limit raised for deep game trees",
        ge=1000,
    )
    JOBS: int = Field(
        default=1,
        description="Worker processes for randomized trials and threshold sweeps",
        ge=1,
        le=256,
    )

    # Match settings
    DEFAULT_ROUND_LIMIT_FACTOR: int = Field(
        default=1,
        description="Multiplier applied to the 2*N*k round bound when no explicit limit is given",
        ge=1,
    )
    TRIALS: int = Field(
        default=100,
        description="Default number of seeded randomized games for `verify --trials`",
        ge=1,
    )

    # Output settings
    OUTPUT_DIR: str = Field(
        default="data",
        description="Directory used for relative output paths",
        examples=["data", "/tmp/chipgame"],
    )

    # Logging settings
    LOG_LEVEL: str = Field(
        default="INFO",
        description="Logging level for the application",
        pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$",
    )
    LOG_DIR: str = Field(
        default="logs",
        description="Directory holding app.log",
    )

    model_config = ConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CHIPGAME_",
        extra="ignore",
        json_schema_extra={
            "title": "Chip Game Settings",
            "description": "Configuration settings for the chip game engine and solver",
            "examples": [
                {
                    "BUDGET": 2_000_000,
                    "JOBS": 1,
                    "TRIALS": 100,
                    "OUTPUT_DIR": "data",
                    "LOG_LEVEL": "INFO",
                }
            ],
        },
    )


# Initialize settings
settings = Settings()
