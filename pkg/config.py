"""
Configuration module

Loads configuration from environment variables with sensible defaults.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _optional_int(name: str):
    value = os.getenv(name, '').strip()
    return int(value) if value else None


class Config:
    """Application configuration"""

    # Randomness. RANKSTORE_SEED, when set, overrides every scenario seed.
    DEFAULT_SEED = int(os.getenv('RANKSTORE_DEFAULT_SEED', '20240101'))
    SEED_OVERRIDE = _optional_int('RANKSTORE_SEED')

    # Fields
    DEFAULT_Q = int(os.getenv('RANKSTORE_DEFAULT_Q', '3'))
    MAX_PRIME = int(os.getenv('RANKSTORE_MAX_PRIME', '31'))

    # Repair plan search
    PLAN_VERIFY_TRIALS = int(os.getenv('RANKSTORE_PLAN_VERIFY_TRIALS', '100'))
    PLAN_RANDOM_TRIALS = int(os.getenv('RANKSTORE_PLAN_RANDOM_TRIALS', '100000'))
    SUBSPACE_ENUM_CAP = int(os.getenv('RANKSTORE_SUBSPACE_ENUM_CAP', '20000'))

    # Logging
    LOG_LEVEL = os.getenv('RANKSTORE_LOG_LEVEL', 'INFO').upper()
    LOG_FILE = os.getenv('RANKSTORE_LOG_FILE', '')
    LOG_JSON = os.getenv('RANKSTORE_LOG_JSON', 'False').lower() == 'true'

    # Storage
    SCENARIO_DIR = os.getenv('RANKSTORE_SCENARIO_DIR', './data/scenarios')
    GOLDEN_DIR = os.getenv('RANKSTORE_GOLDEN_DIR', './data/golden')
    OUTPUT_DIR = os.getenv('RANKSTORE_OUTPUT_DIR', './data/outputs')

    @classmethod
    def seed_for(cls, scenario_seed=None) -> int:
        """Resolve the seed a run should use"""
        if cls.SEED_OVERRIDE is not None:
            return cls.SEED_OVERRIDE
        if scenario_seed is not None:
            return int(scenario_seed)
        return cls.DEFAULT_SEED

    @classmethod
    def validate(cls):
        """Validate configuration"""
        errors = []

        if cls.DEFAULT_Q < 3:
            errors.append("RANKSTORE_DEFAULT_Q must be a prime >= 3")

        if cls.MAX_PRIME < cls.DEFAULT_Q:
            errors.append("RANKSTORE_MAX_PRIME must not be below RANKSTORE_DEFAULT_Q")

        if cls.PLAN_VERIFY_TRIALS < 1:
            errors.append("RANKSTORE_PLAN_VERIFY_TRIALS must be positive")

        if cls.PLAN_RANDOM_TRIALS < 0 or cls.SUBSPACE_ENUM_CAP < 0:
            errors.append("plan search caps must not be negative")

        if cls.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"RANKSTORE_LOG_LEVEL '{cls.LOG_LEVEL}' is not a logging level")

        if errors:
            raise ValueError(
                "Configuration errors:\n" + "\n".join(f"  - {e}" for e in errors)
            )

        return True


# Create global config instance
config = Config()
