from dataclasses import dataclass
import os
from typing import Optional

from dotenv import load_dotenv

from .exceptions import ConfigurationError


@dataclass(kw_only=True)
class Configuration:
    threads: int = 1
    excess_entropy_tol: float = 1e-9
    max_block_length: int = 24
    max_beliefs: int = 4096
    fidelity_max_iterations: int = 100_000
    log_level: str = 'WARNING'

    def __post_init__(self):
        if self.threads < 1:
            raise ConfigurationError(f'Worker count must be at least 1, got {self.threads}')
        if self.excess_entropy_tol <= 0:
            raise ConfigurationError(f'Tolerance must be positive, got {self.excess_entropy_tol}')
        if self.max_block_length < 1:
            raise ConfigurationError(f'Maximum block length must be at least 1, got {self.max_block_length}')
        if self.max_beliefs < 1:
            raise ConfigurationError(f'Belief budget must be at least 1, got {self.max_beliefs}')

    @staticmethod
    def from_env(
            threads_key: str = 'EPSILON_LAB_THREADS',
            tolerance_key: str = 'EPSILON_LAB_TOLERANCE',
            max_block_length_key: str = 'EPSILON_LAB_MAX_BLOCK_LENGTH',
            max_beliefs_key: str = 'EPSILON_LAB_MAX_BELIEFS',
            fidelity_max_iterations_key: str = 'EPSILON_LAB_FIDELITY_MAX_ITERATIONS',
            log_level_key: str = 'EPSILON_LAB_LOG_LEVEL',
            dotenv_path: Optional[str] = None,
    ) -> 'Configuration':
        load_dotenv(dotenv_path)
        return Configuration(
            threads=_read_number(threads_key, int, 1),
            excess_entropy_tol=_read_number(tolerance_key, float, 1e-9),
            max_block_length=_read_number(max_block_length_key, int, 24),
            max_beliefs=_read_number(max_beliefs_key, int, 4096),
            fidelity_max_iterations=_read_number(fidelity_max_iterations_key, int, 100_000),
            log_level=os.getenv(log_level_key, 'WARNING').upper(),
        )


def _read_number(key: str, kind: type, default):
    raw = os.getenv(key)
    if raw is None or raw.strip() == '':
        return default
    try:
        return kind(raw)
    except ValueError as e:
        raise ConfigurationError(f'{key} must be a {kind.__name__}, got {raw!r}') from e
