"""Random-coding exponent E_r(R), optimal tilt (ρ, η), critical rate and regime."""

from dataclasses import dataclass
from enum import Enum

from scipy.optimize import brentq

from ..channel import DiscreteChannel, NuTable, mutual_information, nu_table
from ..config import get_settings
from ..tilt import tilted_stats
from .support import log_mgf_derivative, z_support

# Lower end of the α bracket; the stationarity condition R + L′(α) = 0 is negative there.
ALPHA_MIN = 1e-9

# R_crit within this distance of I means Z(η) is singular: no above-critical rates.
SINGULAR_GAP = 1e-12


class Regime(str, Enum):
    """Position of the rate relative to the critical rate."""

    BELOW_CRITICAL = "below"
    AT_CRITICAL = "crit"
    ABOVE_CRITICAL = "above"


@dataclass(frozen=True)
class RateAnalysis:
    """Solved exponent problem at rate ``R`` (all quantities in nats)."""

    R: float
    rho: float
    eta: float
    lambda_rho: float
    er: float
    rcrit: float
    mi: float
    delta: float
    regime: Regime


def critical_rate(ch: DiscreteChannel, nt: NuTable | None = None) -> float:
    """R_crit = −L′(1), the largest rate whose optimal tilt is ρ = 1."""
    return -log_mgf_derivative(ch, 1.0, nt)


def _classify_rate(R: float, rcrit: float, tol: float) -> Regime:
    if abs(R - rcrit) <= tol:
        return Regime.AT_CRITICAL
    if R < rcrit:
        return Regime.BELOW_CRITICAL
    return Regime.ABOVE_CRITICAL


def solve_exponent(
    ch: DiscreteChannel,
    R: float,
    *,
    crit_tol: float | None = None,
    force_regime: Regime | str | None = None,
    nt: NuTable | None = None,
) -> RateAnalysis:
    """Solve E_r(R) = −min_{α∈(0,1]} {αR + L(α)}.

    Below and at the critical rate the minimizer is ρ = 1. Above it, ρ is the root
    of the stationarity condition R + L′(α) = 0, which is increasing in α.

    Args:
        ch: A validated channel
        R: Rate in nats per symbol, 0 < R < I(X;Y)
        crit_tol: Tolerance for declaring R = R_crit (defaults to settings)
        force_regime: Override the detected regime
        nt: Optional precomputed ν table

    Returns:
        RateAnalysis

    Raises:
        ValueError: If R lies outside (0, I), or an above-critical solution is
            requested where none exists
    """
    nt = nt if nt is not None else nu_table(ch)
    tol = crit_tol if crit_tol is not None else get_settings().crit_tol
    mi = mutual_information(ch, nt)
    if not 0 < R < mi:
        raise ValueError(f"rate {R:.12g} outside (0, I) with I = {mi:.12g}")
    rcrit = critical_rate(ch, nt)

    regime = Regime(force_regime) if force_regime is not None else _classify_rate(R, rcrit, tol)
    if regime is Regime.ABOVE_CRITICAL:
        if rcrit >= mi - SINGULAR_GAP:
            raise ValueError("no above-critical regime exists: Z(eta) is singular (R_crit = I)")
        if R <= rcrit:
            raise ValueError(f"rate {R:.12g} is not above R_crit = {rcrit:.12g}")

        def stationarity(alpha: float) -> float:
            return R + log_mgf_derivative(ch, alpha, nt)

        if stationarity(ALPHA_MIN) >= 0:
            raise ValueError(f"rate {R:.12g} too close to I = {mi:.12g} to resolve rho")
        rho = float(brentq(stationarity, ALPHA_MIN, 1.0, xtol=1e-15, rtol=1e-15, maxiter=500))
    else:
        rho = 1.0

    eta = 1.0 / (1.0 + rho)
    stats = tilted_stats(z_support(ch, eta, nt), rho, R)
    return RateAnalysis(
        R=R,
        rho=rho,
        eta=eta,
        lambda_rho=stats.lambda_rho,
        er=-(rho * R + stats.lambda_rho),
        rcrit=rcrit,
        mi=mi,
        delta=stats.delta,
        regime=regime,
    )
