"""Configuration management for lamedisc."""

import os
from pathlib import Path

from dotenv import load_dotenv

from lamedisc.ode_floquet import IntegrationConfig

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


class Config:
    """Configuration class for lamedisc."""

    # Integrator defaults
    REL_TOL = float(os.getenv("LAMEDISC_REL_TOL", "1e-11"))
    ABS_TOL = float(os.getenv("LAMEDISC_ABS_TOL", "1e-13"))
    MAX_STEPS = int(os.getenv("LAMEDISC_MAX_STEPS", "200000"))

    # Sweep worker processes; 1 runs rows in-process
    WORKERS = int(os.getenv("LAMEDISC_WORKERS", "1"))

    # CLI Configuration
    DEBUG = os.getenv("DEBUG", "false").lower() == "true"
    OUTPUT_FORMAT = os.getenv("OUTPUT_FORMAT", "table")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

    @classmethod
    def get_integration_config(cls, rel_tol: float | None = None) -> IntegrationConfig:
        """Build the integrator settings.

        Args:
            rel_tol: Override for the relative tolerance. The absolute tolerance
                keeps its ratio to rel_tol when overridden.
        """
        if rel_tol is None:
            return IntegrationConfig(cls.REL_TOL, cls.ABS_TOL, cls.MAX_STEPS)
        return IntegrationConfig(rel_tol, rel_tol * cls.ABS_TOL / cls.REL_TOL, cls.MAX_STEPS)

    @classmethod
    def wants_json(cls) -> bool:
        """Whether commands default to JSON instead of Rich tables."""
        return cls.OUTPUT_FORMAT.lower() == "json"


# Global config instance
config = Config()
