"""Expectations against the standard normal law."""

import math
from collections.abc import Callable

from scipy.integrate import quad

from ..config import get_settings

# Integration range; the normal mass outside is below 1e-16.
GAUSS_LIMIT = 8.5

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def gauss_expect(f: Callable[[float], float], tol: float | None = None) -> float:
    """E[f(V)] for V ~ N(0, 1) by adaptive quadrature of f·φ on [−8.5, 8.5].

    Args:
        f: Bounded scalar function
        tol: Absolute error target (defaults to settings)

    Returns:
        The expectation

    Raises:
        ValueError: If f returns a non-finite value
    """
    tol = tol if tol is not None else get_settings().quad_tol

    def integrand(v: float) -> float:
        fv = f(v)
        if not math.isfinite(fv):
            raise ValueError(f"integrand is not finite at v={v}: {fv}")
        return fv * _INV_SQRT_2PI * math.exp(-0.5 * v * v)

    value, _ = quad(integrand, -GAUSS_LIMIT, GAUSS_LIMIT, epsabs=tol, epsrel=0.0, limit=500)
    return float(value)
