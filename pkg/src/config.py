"""
Configuration module for Adjust
Handles environment variables and numerical settings
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _flag(value: str) -> bool:
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Configuration class for the adjustment-set toolkit"""

    # Logging
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'WARNING').upper()
    LOG_DIR: str = os.getenv('LOG_DIR', 'logs')
    OUTPUT_DIR: str = os.getenv('OUTPUT_DIR', 'output')

    # Oracle limits
    ORACLE_STATE_CAP: int = int(os.getenv('ORACLE_STATE_CAP', str(2 ** 20)))
    ENUMERATION_CAP: int = int(os.getenv('ENUMERATION_CAP', '20'))

    # Random models
    RANDOM_EPSILON: float = float(os.getenv('RANDOM_EPSILON', '0.01'))
    RANDOM_CARDINALITY: int = int(os.getenv('RANDOM_CARDINALITY', '2'))

    # Numerical tolerances
    VARIANCE_TOLERANCE: float = float(os.getenv('VARIANCE_TOLERANCE', '1e-9'))
    MEAN_ZERO_TOLERANCE: float = float(os.getenv('MEAN_ZERO_TOLERANCE', '1e-10'))

    # Keep H0 inside EfficiencyGraph (tests and debugging)
    RETAIN_H0: bool = _flag(os.getenv('RETAIN_H0', 'false'))

    @classmethod
    def validate(cls) -> bool:
        """Validate that the numerical settings are usable"""
        problems = []

        if cls.ORACLE_STATE_CAP < 1:
            problems.append(f"ORACLE_STATE_CAP must be positive, got {cls.ORACLE_STATE_CAP}")
        if not 0 <= cls.ENUMERATION_CAP <= 20:
            problems.append(f"ENUMERATION_CAP must lie in [0, 20], got {cls.ENUMERATION_CAP}")
        if cls.RANDOM_CARDINALITY < 2:
            problems.append(f"RANDOM_CARDINALITY must be at least 2, got {cls.RANDOM_CARDINALITY}")
        elif not 0 < cls.RANDOM_EPSILON < 1 / cls.RANDOM_CARDINALITY:
            problems.append(f"RANDOM_EPSILON must lie in (0, 1/{cls.RANDOM_CARDINALITY}), got {cls.RANDOM_EPSILON}")
        if cls.VARIANCE_TOLERANCE < 0 or cls.MEAN_ZERO_TOLERANCE < 0:
            problems.append("Tolerances must be non-negative")

        if problems:
            for problem in problems:
                print(f"❌ {problem}")
            print("Please check your .env file or environment variables.")
            return False

        print("✅ Configuration validation passed")
        return True

    @classmethod
    def print_config(cls):
        """Print current configuration"""
        print("📋 Current Configuration:")
        print(f"  Log Level: {cls.LOG_LEVEL}")
        print(f"  Log Directory: {cls.LOG_DIR}")
        print(f"  Output Directory: {cls.OUTPUT_DIR}")
        print(f"  Oracle State Cap: {cls.ORACLE_STATE_CAP}")
        print(f"  Enumeration Cap: {cls.ENUMERATION_CAP}")
        print(f"  Random Epsilon: {cls.RANDOM_EPSILON}")
        print(f"  Random Cardinality: {cls.RANDOM_CARDINALITY}")
        print(f"  Variance Tolerance: {cls.VARIANCE_TOLERANCE}")
        print(f"  Mean-Zero Tolerance: {cls.MEAN_ZERO_TOLERANCE}")
        print(f"  Retain H0: {'✅ Yes' if cls.RETAIN_H0 else '❌ No'}")
