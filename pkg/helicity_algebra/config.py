"""
Runtime settings
Explicit arguments win, then environment variables, then defaults
"""
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import ConfigurationError

SEED_ENV = "HELICITY_ALGEBRA_SEED"
MAX_GENERATORS_ENV = "HELICITY_ALGEBRA_MAX_GENERATORS"

DEFAULT_SEED = 20011
DEFAULT_MAX_GENERATORS = 16


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigurationError(f"{name} must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Resolved settings shared by the CLI and the invariant suites"""
    seed: int = DEFAULT_SEED
    max_generators: int = DEFAULT_MAX_GENERATORS
    tolerance: float = 1e-10
    order_window: Tuple[float, float] = (1.6, 2.4)
    ratio_window: Tuple[float, float] = (3.2, 4.8)

    @classmethod
    def load(cls, seed: Optional[int] = None, max_generators: Optional[int] = None) -> "Settings":
        """
        Build settings from arguments and the environment

        Args:
            seed: Random seed, reads HELICITY_ALGEBRA_SEED if not provided
            max_generators: Generator cap, reads HELICITY_ALGEBRA_MAX_GENERATORS if not provided

        Returns:
            Settings instance
        """
        if seed is None:
            seed = _env_int(SEED_ENV, DEFAULT_SEED)
        if max_generators is None:
            max_generators = _env_int(MAX_GENERATORS_ENV, DEFAULT_MAX_GENERATORS)
        if seed < 0 or seed >= 2**64:
            raise ConfigurationError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
        if not 1 <= max_generators <= 62:
            raise ConfigurationError(f"max_generators must be in [1, 62], got {max_generators}")
        return cls(seed=seed, max_generators=max_generators)


@lru_cache(maxsize=None)
def get_settings() -> Settings:
    """Settings from the environment, read once; call get_settings.cache_clear() after changing it"""
    return Settings.load()
