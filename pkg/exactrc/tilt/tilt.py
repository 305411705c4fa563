"""The tilted measure P_ρ over (x, y) atoms and its moments."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp

if TYPE_CHECKING:
    from ..exponent.support import ZSupport


@dataclass(frozen=True)
class TiltedStats:
    """Moments of (Z, Z′, Z″) at η under P_ρ, plus Δ = −(μ₀ + R).

    ``delta`` is kept signed; consumers clamp it only where the regime allows.
    """

    mu0: float
    mu1: float
    mu2: float
    sigma00: float
    sigma01: float
    sigma11: float
    det_sigma: float
    delta: float
    lambda_rho: float


@dataclass(frozen=True)
class TiltedSampler:
    """Normalized tilted pmf over atoms with per-atom importance log-weights."""

    pmf: np.ndarray
    log_weights: np.ndarray
    lambda_rho: float
    rho: float

    def sample(self, rng: np.random.Generator, shape) -> np.ndarray:
        """Draw atom indices from the tilted pmf."""
        return rng.choice(self.pmf.size, size=shape, p=self.pmf)


def _tilted_weights(zs: "ZSupport", rho: float) -> tuple[np.ndarray, float]:
    # Pivot on max(log p + ρ z0) so exponentials never overflow.
    log_w = np.log(zs.p) + rho * zs.z0
    lam = float(logsumexp(log_w))
    return np.exp(log_w - lam), lam


def tilted_stats(zs: "ZSupport", rho: float, R: float) -> TiltedStats:
    """Moments of the tilted measure dP_ρ/dP = e^{ρZ(η) − Λ(ρ)}.

    Args:
        zs: Z support evaluated at η = 1/(1+ρ)
        rho: Tilt parameter ρ ≥ 0
        R: Rate in nats per symbol

    Returns:
        TiltedStats
    """
    w, lam = _tilted_weights(zs, rho)
    mu0 = float(np.dot(w, zs.z0))
    mu1 = float(np.dot(w, zs.z1))
    mu2 = float(np.dot(w, zs.z2))
    d0 = zs.z0 - mu0
    d1 = zs.z1 - mu1
    sigma00 = float(np.dot(w, d0 * d0))
    sigma01 = float(np.dot(w, d0 * d1))
    sigma11 = float(np.dot(w, d1 * d1))
    return TiltedStats(
        mu0=mu0,
        mu1=mu1,
        mu2=mu2,
        sigma00=sigma00,
        sigma01=sigma01,
        sigma11=sigma11,
        det_sigma=sigma00 * sigma11 - sigma01 * sigma01,
        delta=-(mu0 + R),
        lambda_rho=lam,
    )


def tilted_sampler(zs: "ZSupport", rho: float) -> TiltedSampler:
    """Tilted atom distribution with importance log-weights log(p_a/w_a) = Λ(ρ) − ρz0_a.

    Args:
        zs: Z support evaluated at η
        rho: Tilt parameter; 0 gives the untilted law with zero log-weights

    Returns:
        TiltedSampler
    """
    w, lam = _tilted_weights(zs, rho)
    return TiltedSampler(
        pmf=w / w.sum(),
        log_weights=lam - rho * zs.z0,
        lambda_rho=lam,
        rho=float(rho),
    )
