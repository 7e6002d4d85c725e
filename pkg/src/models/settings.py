from typing import Optional

from dotenv import dotenv_values
from pydantic import BaseModel
from pydantic import Field
from pydantic import field_validator
from pydantic_core import PydanticCustomError


class Settings(BaseModel):
    """Settings model for environment variables with validation and defaults."""

    # Logging
    log_level: str = Field(default="INFO", description="Log level")
    log_dir: Optional[str] = Field(
        default=None, description="Directory for the rotating log file (off if unset)"
    )

    # Domain
    connectivity: int = Field(
        default=4, description="Grid neighborhood used when reading VTK files"
    )
    grid_resolution: str = Field(
        default="100x50", description="Width x height of synthetic grid cases"
    )
    chain_samples: int = Field(
        default=3, ge=0, description="Samples per monotone segment of 1D cases"
    )

    # Dissimilarity
    wasserstein_q: float = Field(
        default=2.0, ge=1.0, description="Wasserstein exponent"
    )
    indel_factor: float = Field(
        default=1.0, gt=0.0, description="Insert/delete cost as a share of persistence"
    )
    workers: int = Field(default=1, ge=1, description="Distance matrix worker threads")

    # Experiments
    seed: int = Field(default=20180901, description="Seed of randomized experiments")

    # Hidden/Internal fields
    debug: bool = Field(
        default=False, description="Show tracebacks of unexpected errors"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        """Validate the log level names a standard logging level."""
        if v.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise PydanticCustomError(
                "invalid_log_level", "Unknown log level {level}", {"level": v}
            )
        return v.upper()

    @field_validator("connectivity")
    @classmethod
    def validate_connectivity(cls, v):
        """Validate the grid neighborhood is 4 or 8."""
        if v not in (4, 8):
            raise PydanticCustomError(
                "invalid_connectivity",
                "Connectivity must be 4 or 8, got {value}",
                {"value": v},
            )
        return v

    @field_validator("grid_resolution")
    @classmethod
    def validate_grid_resolution(cls, v):
        """Validate the resolution looks like WxH with positive extents."""
        parts = v.lower().split("x")
        if len(parts) != 2 or not all(p.isdigit() and int(p) > 0 for p in parts):
            raise PydanticCustomError(
                "invalid_resolution",
                "Resolution must look like WxH, got {value}",
                {"value": v},
            )
        return v.lower()

    @classmethod
    def from_env_file(cls, env_path: str) -> "Settings":
        """Load and validate the settings named in a .env file.

        Keys are upper-case field names; unknown keys are ignored.
        """
        env_values = dotenv_values(env_path)

        settings_dict = {}
        for field_name in cls.model_fields:
            env_value = env_values.get(field_name.upper())
            if env_value is not None:
                settings_dict[field_name] = env_value

        return cls(**settings_dict)
