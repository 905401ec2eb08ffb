"""
Configuration management for rtz

Integer settings are read from the environment when accessed, so a
malformed value surfaces as ConfigError inside the command that needs it.
"""
import os

from dotenv import load_dotenv

from rtz.errors import ConfigError

# Load environment variables from .env file outside production
if os.getenv('RTZ_ENV') != 'production':
    load_dotenv()


def _int_env(key, default):
    raw = os.environ.get(key, str(default))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}")


class IntSetting:
    """Integer environment variable with a default"""

    def __init__(self, key, default):
        self.key = key
        self.default = default

    def __get__(self, instance, owner):
        return _int_env(self.key, self.default)


class Config:
    """Base configuration"""

    # Numeric precision (decimal digits) for root finding and series checks
    PRECISION_DIGITS = IntSetting('RTZ_PRECISION_DIGITS', 30)

    # Precision ladder: how many times a failing numeric stage may double
    MAX_DOUBLINGS = IntSetting('RTZ_MAX_DOUBLINGS', 10)

    # First width (decimal digits) of the pi enclosure in Bernoulli bound checks
    PI_START_DIGITS = IntSetting('RTZ_PI_START_DIGITS', 20)

    # Parallel workers for range scans
    JOBS = IntSetting('RTZ_JOBS', 1)

    LOG_LEVEL = os.environ.get('RTZ_LOG_LEVEL', 'WARNING').upper()

    # Range caps, bound memory on big scans
    MAX_K = IntSetting('RTZ_MAX_K', 200)
    MAX_N = IntSetting('RTZ_MAX_N', 10**6)
    MAX_ELL = IntSetting('RTZ_MAX_ELL', 16)

    @classmethod
    def validate(cls):
        """Read every integer setting once; raises ConfigError on the first bad one"""
        for name, value in vars(cls).items():
            if isinstance(value, IntSetting):
                getattr(cls, name)
