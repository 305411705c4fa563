"""Tie-resolution kernels g and their u^{−ρ}-weighted forms.

Every function accepts scalars or numpy arrays for ``u``. The h = 0 cases use the
conventions (e^x − 1)/x = x/(e^x − 1) = 1 as explicit branches.
"""

import numpy as np

# Below this argument ω(t) = 1 − (1 − e^{−t})/t is summed as a power series.
SERIES_CUTOFF = 1e-3


def omega(t):
    """ω(t) = 1 − (1 − e^{−t})/t, accurate as t → 0."""
    t = np.asarray(t, dtype=float)
    small = t < SERIES_CUTOFF
    ts = np.where(small, t, 0.0)
    # t/2 − t²/6 + t³/24 − t⁴/120 + t⁵/720
    series = ts * (1 / 2 - ts * (1 / 6 - ts * (1 / 24 - ts * (1 / 120 - ts / 720))))
    tl = np.where(small, 1.0, t)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = 1.0 + np.expm1(-tl) / tl
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def _rates(h: float, eta: float) -> tuple[float, float, float]:
    """b = hη, c = b/(e^b − 1) and c̃ = b·e^b/(e^b − 1)."""
    b = h * eta
    if b == 0:
        return 0.0, 1.0, 1.0
    return b, b / np.expm1(b), -b / np.expm1(-b)


def g_h(h: float, eta: float, u):
    """g_h(u) = 1 − e^{−cu}(1 − e^{−bu})/(bu), with b = hη and c = b/(e^b − 1)."""
    u = np.asarray(u, dtype=float)
    b, c, _ = _rates(h, eta)
    if b == 0:
        out = -np.expm1(-u)
    else:
        decay = np.exp(-c * u)
        out = -np.expm1(-c * u) + decay * omega(b * u)
    return out if np.ndim(out) else float(out)


def g_tilde_h(h: float, eta: float, u):
    """Ties-as-errors kernel g̃_h(u) = 1 − e^{−c̃u}, c̃ = hηe^{hη}/(e^{hη} − 1)."""
    u = np.asarray(u, dtype=float)
    _, _, c_tilde = _rates(h, eta)
    out = -np.expm1(-c_tilde * u)
    return out if np.ndim(out) else float(out)


def g_prime(u):
    """Singular-channel kernel g′(u) = 1 − (1 − e^{−u})/u."""
    return omega(u)


def g_tilde_prime(u):
    """Singular ties-as-errors kernel g̃′(u) = 1 − e^{−u}."""
    u = np.asarray(u, dtype=float)
    out = -np.expm1(-u)
    return out if np.ndim(out) else float(out)


def g_rho_h(rho: float, h: float, u):
    """g_{ρ,h}(u) = u^{−ρ}·g_h(u) at η = 1/(1+ρ)."""
    return np.power(u, -rho) * g_h(h, 1.0 / (1.0 + rho), u)


def g_tilde_rho_h(rho: float, h: float, u):
    """g̃_{ρ,h}(u) = u^{−ρ}·g̃_h(u) at η = 1/(1+ρ)."""
    return np.power(u, -rho) * g_tilde_h(h, 1.0 / (1.0 + rho), u)


def g_prime_rho(rho: float, u):
    return np.power(u, -rho) * g_prime(u)


def g_tilde_prime_rho(rho: float, u):
    return np.power(u, -rho) * g_tilde_prime(u)


def kernel_on_log_scale(kind: str, rho: float, h: float, w):
    """Evaluate u^{−ρ}·g(u) at u = e^w with e^{−ρw} taken directly.

    ``kind`` is one of "g", "g_tilde", "g_prime", "g_tilde_prime".
    """
    w = np.asarray(w, dtype=float)
    eta = 1.0 / (1.0 + rho)
    with np.errstate(over="ignore"):
        u = np.exp(w)
    if kind == "g":
        g = g_h(h, eta, u)
    elif kind == "g_tilde":
        g = g_tilde_h(h, eta, u)
    elif kind == "g_prime":
        g = g_prime(u)
    elif kind == "g_tilde_prime":
        g = g_tilde_prime(u)
    else:
        raise ValueError(f"unknown kernel {kind!r}")
    return np.exp(-rho * w) * g
