"""Special functions and ψ constants for exactrc."""

from .constants import (
    kernel_series,
    psi_rho_h,
    psi_series,
    psi_tilde_rho_h,
    psi_tilde_series,
    psin_rho,
    psin_series,
    tpsin_rho,
    tpsin_series,
)
from .gamma import gamma_fn
from .kernels import (
    g_h,
    g_prime,
    g_prime_rho,
    g_rho_h,
    g_tilde_h,
    g_tilde_prime,
    g_tilde_prime_rho,
    g_tilde_rho_h,
    kernel_on_log_scale,
    omega,
)
from .quadrature import gauss_expect

__all__ = [
    "g_h",
    "g_prime",
    "g_prime_rho",
    "g_rho_h",
    "g_tilde_h",
    "g_tilde_prime",
    "g_tilde_prime_rho",
    "g_tilde_rho_h",
    "gamma_fn",
    "gauss_expect",
    "kernel_on_log_scale",
    "kernel_series",
    "omega",
    "psi_rho_h",
    "psi_series",
    "psi_tilde_rho_h",
    "psi_tilde_series",
    "psin_rho",
    "psin_series",
    "tpsin_rho",
    "tpsin_series",
]
