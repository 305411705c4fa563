"""Closed-form ψ constants and their periodic lattice series.

The series ψ_{ρ,h,h′}(x) = Σ_i h′·k(e^{x+ih′}) for a kernel k(u) = u^{−ρ}g(u) is truncated
with the envelope k(e^w) ≤ C·min(e^{−ρw}, e^{(1−ρ)w}).
"""

import math

import numpy as np

from ..config import get_settings
from .gamma import gamma_fn
from .kernels import kernel_on_log_scale

# Largest number of terms a single series may use.
MAX_SERIES_TERMS = 10_000_000


def _check_rho(rho: float) -> None:
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")


def _gamma_ratio(rho: float) -> float:
    """Γ(1−ρ)/ρ."""
    _check_rho(rho)
    return gamma_fn(1.0 - rho) / rho


def psi_rho_h(rho: float, h: float) -> float:
    """ψ_{ρ,h} = Γ(1−ρ)/ρ·(hη/(e^{hη} − 1))^{ρ+1}·(e^h − 1)/h."""
    base = _gamma_ratio(rho)
    if h == 0:
        return base
    b = h / (1.0 + rho)
    return base * (b / math.expm1(b)) ** (rho + 1) * math.expm1(h) / h


def psi_tilde_rho_h(rho: float, h: float) -> float:
    """ψ̃_{ρ,h} = Γ(1−ρ)/ρ·(hηe^{hη}/(e^{hη} − 1))^ρ, the ties-as-errors constant."""
    base = _gamma_ratio(rho)
    if h == 0:
        return base
    b = h / (1.0 + rho)
    return base * (-b / math.expm1(-b)) ** rho


def psin_rho(rho: float) -> float:
    """ψ′_ρ = Γ(1−ρ)/(ρ(1+ρ)) for singular channels."""
    return _gamma_ratio(rho) / (1.0 + rho)


def tpsin_rho(rho: float) -> float:
    """ψ̃′_ρ = Γ(1−ρ)/ρ for singular channels with ties counted as errors."""
    return _gamma_ratio(rho)


def _tail_terms(log_scale: float, rate: float, h_prime: float, start: float, tol: float) -> int:
    """Smallest K with scale·e^{−rate·(start + (K+1)h′)}/(1 − e^{−rate·h′}) ≤ tol."""
    log_bound = log_scale - math.log(-math.expm1(-rate * h_prime)) - math.log(tol)
    k = math.ceil((log_bound / rate - start) / h_prime) - 1
    return max(0, k)


def kernel_series(
    kind: str,
    rho: float,
    h: float,
    h_prime: float,
    x: float,
    tol: float | None = None,
) -> float:
    """Σ_i h′·k(e^{x+ih′}) for the kernel named by ``kind``; periodic in x with period h′.

    Args:
        kind: "g", "g_tilde", "g_prime" or "g_tilde_prime"
        rho: Tilt parameter in (0, 1)
        h: ν span (ignored by the singular kernels)
        h_prime: Lattice span of Z(η), > 0
        x: Phase
        tol: Truncation error bound (defaults to settings)

    Returns:
        The truncated series

    Raises:
        RuntimeError: If the truncation needs more than MAX_SERIES_TERMS terms
    """
    _check_rho(rho)
    if not h_prime > 0:
        raise ValueError(f"h_prime must be positive, got {h_prime}")
    tol = tol if tol is not None else get_settings().series_tol
    const = 1.0 + h / (1.0 + rho) if kind in ("g", "g_tilde") else 1.0
    x0 = math.fmod(x, h_prime)
    if x0 < 0:
        x0 += h_prime

    log_scale = math.log(const * h_prime)
    k_plus = _tail_terms(log_scale, rho, h_prime, x0, tol / 2)
    k_minus = _tail_terms(log_scale, 1.0 - rho, h_prime, -x0, tol / 2)
    if k_plus + k_minus + 1 > MAX_SERIES_TERMS:
        raise RuntimeError(
            f"series for rho={rho:.6g}, h'={h_prime:.6g} needs {k_plus + k_minus + 1} terms"
        )
    w = x0 + h_prime * np.arange(-k_minus, k_plus + 1)
    return float(h_prime * np.sum(kernel_on_log_scale(kind, rho, h, w)))


def psi_series(rho: float, h: float, h_prime: float, x: float, tol: float | None = None) -> float:
    """ψ_{ρ,h,h′}(x)."""
    return kernel_series("g", rho, h, h_prime, x, tol)


def psi_tilde_series(
    rho: float, h: float, h_prime: float, x: float, tol: float | None = None
) -> float:
    """ψ̃_{ρ,h,h′}(x), the ties-as-errors series."""
    return kernel_series("g_tilde", rho, h, h_prime, x, tol)


def psin_series(rho: float, h_prime: float, x: float, tol: float | None = None) -> float:
    """ψ′_{ρ,h′}(x) for singular channels."""
    return kernel_series("g_prime", rho, 0.0, h_prime, x, tol)


def tpsin_series(rho: float, h_prime: float, x: float, tol: float | None = None) -> float:
    """ψ̃′_{ρ,h′}(x) for singular channels with ties counted as errors."""
    return kernel_series("g_tilde_prime", rho, 0.0, h_prime, x, tol)
