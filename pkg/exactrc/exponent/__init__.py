"""Error-exponent module for exactrc."""

from .solver import RateAnalysis, Regime, critical_rate, solve_exponent
from .support import ZSupport, log_mgf, log_mgf_derivative, z_support

__all__ = [
    "RateAnalysis",
    "Regime",
    "ZSupport",
    "critical_rate",
    "log_mgf",
    "log_mgf_derivative",
    "solve_exponent",
    "z_support",
]
