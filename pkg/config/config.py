"""
Symmetry Testing Toolkit Configuration
Dataclass sections with environment-variable overrides
"""

import os
from dataclasses import dataclass, field
from typing import Tuple

from src.errors import ConfigurationError


def _positive_int(name: str, value: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if parsed < 1:
        raise ConfigurationError(f"{name} must be a positive integer, got {parsed}")
    return parsed


def _positive_float(name: str, value: str) -> float:
    try:
        parsed = float(value)
    except ValueError:
        raise ConfigurationError(f"{name} must be a number, got {value!r}")
    if not parsed > 0:
        raise ConfigurationError(f"{name} must be positive, got {parsed}")
    return parsed


@dataclass
class ComputeConfig:
    """Numerical engine configuration"""
    threads: int = 1
    rtol: float = 1e-10
    weingarten_max_n: int = 4  # (n!)^2 * 4^n assembly cost
    weingarten_hard_limit: int = 6
    max_side: int = 2 ** 14

    def __post_init__(self):
        self.threads = _positive_int("SYMTEST_THREADS", os.getenv("SYMTEST_THREADS", str(self.threads)))
        self.rtol = _positive_float("SYMTEST_RTOL", os.getenv("SYMTEST_RTOL", str(self.rtol)))
        self.weingarten_max_n = _positive_int(
            "SYMTEST_WEINGARTEN_MAX_N", os.getenv("SYMTEST_WEINGARTEN_MAX_N", str(self.weingarten_max_n))
        )
        if self.weingarten_max_n > self.weingarten_hard_limit:
            raise ConfigurationError(
                f"SYMTEST_WEINGARTEN_MAX_N={self.weingarten_max_n} exceeds the hard limit {self.weingarten_hard_limit}"
            )


@dataclass
class MonteCarloConfig:
    """Monte Carlo sampling configuration"""
    seed: int = 20240601
    shots: int = 100_000
    chunk_size: int = 4096
    sigma_multiplier: float = 4.0
    support_rtol: float = 0.1
    jackknife_batches: int = 20

    def __post_init__(self):
        self.seed = int(os.getenv("SYMTEST_SEED", str(self.seed)))
        self.shots = _positive_int("SYMTEST_SHOTS", os.getenv("SYMTEST_SHOTS", str(self.shots)))
        self.chunk_size = _positive_int("SYMTEST_CHUNK_SIZE", os.getenv("SYMTEST_CHUNK_SIZE", str(self.chunk_size)))
        self.sigma_multiplier = _positive_float(
            "SYMTEST_SIGMA_MULTIPLIER", os.getenv("SYMTEST_SIGMA_MULTIPLIER", str(self.sigma_multiplier))
        )
        self.jackknife_batches = _positive_int(
            "SYMTEST_JACKKNIFE_BATCHES", os.getenv("SYMTEST_JACKKNIFE_BATCHES", str(self.jackknife_batches))
        )
        if self.jackknife_batches < 2:
            raise ConfigurationError(f"SYMTEST_JACKKNIFE_BATCHES must be at least 2, got {self.jackknife_batches}")


@dataclass
class ProtocolConfig:
    """Optimal protocol construction and simulation configuration"""
    null_shots: int = 10_000
    alt_shots: int = 100_000
    extremal_angles: int = 8
    leakage_tol: float = 1e-9
    max_n: int = 6
    max_state_dim: int = 2 ** 10  # system x reference; bounds the dense tester at 2^20 entries

    def __post_init__(self):
        self.null_shots = _positive_int("SYMTEST_NULL_SHOTS", os.getenv("SYMTEST_NULL_SHOTS", str(self.null_shots)))
        self.alt_shots = _positive_int("SYMTEST_ALT_SHOTS", os.getenv("SYMTEST_ALT_SHOTS", str(self.alt_shots)))


@dataclass
class AnalysisConfig:
    """Sample complexity and scaling analysis configuration"""
    n_max_search: int = 1_000_000
    delta_grid_points: int = 13
    delta_grid_range: Tuple[float, float] = (1e-2, 1e-8)
    growth_range: Tuple[int, int] = (64, 512)

    def __post_init__(self):
        self.n_max_search = _positive_int(
            "SYMTEST_N_MAX_SEARCH", os.getenv("SYMTEST_N_MAX_SEARCH", str(self.n_max_search))
        )


@dataclass
class MonitoringConfig:
    """Logging configuration"""
    log_level: str = "INFO"
    log_file: str = ""

    def __post_init__(self):
        self.log_level = os.getenv("LOG_LEVEL", self.log_level).upper()
        self.log_file = os.getenv("SYMTEST_LOG_FILE", self.log_file)


@dataclass
class Config:
    """Main configuration class"""
    compute: ComputeConfig = field(default_factory=ComputeConfig)
    montecarlo: MonteCarloConfig = field(default_factory=MonteCarloConfig)
    protocol: ProtocolConfig = field(default_factory=ProtocolConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    monitoring: MonitoringConfig = field(default_factory=MonitoringConfig)


# Global configuration instance
config = Config()
