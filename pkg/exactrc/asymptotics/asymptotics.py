"""Exact-asymptotic predictions of the random-coding error probability P_RC(n)."""

import math
from dataclasses import dataclass
from enum import Enum

from ..classify import ChannelClass, PairClass
from ..exponent import RateAnalysis, Regime
from ..special import (
    gauss_expect,
    psi_rho_h,
    psi_series,
    psi_tilde_rho_h,
    psi_tilde_series,
    psin_rho,
    psin_series,
    tpsin_rho,
    tpsin_series,
)
from ..tilt import TiltedStats

# Above-critical constants carry Γ(1−ρ); closer than this to ρ = 1 the caller must use AtCritical.
RHO_POLE_GAP = 1e-6

# σ₀₀ at or below this makes the above-critical normal approximation meaningless.
VARIANCE_FLOOR = 1e-15


class TieRule(str, Enum):
    """How the decoder resolves likelihood ties."""

    UNIFORM_RANDOM = "uniform"
    TIE_AS_ERROR = "error"


class Branch(str, Enum):
    """Which asymptotic formula applies."""

    T1_BELOW = "T1_Below"
    T1_AT_CRIT = "T1_AtCrit"
    T2_NONLATTICE = "T2_Nonlattice"
    T2_LATTICE = "T2_Lattice"
    T2_PSEUDO_SYM_NONLATTICE = "T2_PseudoSym_Nonlattice"
    T2_PSEUDO_SYM_LATTICE = "T2_PseudoSym_Lattice"
    T3_BELOW = "T3_Below"
    T3_AT_CRIT = "T3_AtCrit"
    T4_LATTICE = "T4_Lattice"
    T4_NONLATTICE = "T4_Nonlattice"

    @property
    def oscillates(self) -> bool:
        return self in (Branch.T2_LATTICE, Branch.T2_PSEUDO_SYM_LATTICE, Branch.T4_LATTICE)


@dataclass(frozen=True)
class Prediction:
    """Predicted P_RC(n) ≈ prefactor·e^{−nE_r(R)}.

    ``i_n`` and ``c2`` are set on nonsingular above-critical branches only. ``alt_prefactor`` is the
    singular above-critical prefactor with the √(2πn)·σ₀₀ denominator.
    """

    n: int
    branch: Branch
    log_value: float
    prefactor: float
    i_n: float | None = None
    c2: float | None = None
    oscillating: bool = False
    alt_prefactor: float | None = None

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def select_branch(ra: RateAnalysis, cc: ChannelClass, pc: PairClass) -> Branch:
    """Pick the formula for a solved rate without evaluating any constant."""
    if cc.singular:
        if ra.regime is Regime.BELOW_CRITICAL:
            return Branch.T3_BELOW
        if ra.regime is Regime.AT_CRITICAL:
            return Branch.T3_AT_CRIT
        return Branch.T4_LATTICE if pc.lattice else Branch.T4_NONLATTICE
    if ra.regime is Regime.BELOW_CRITICAL:
        return Branch.T1_BELOW
    if ra.regime is Regime.AT_CRITICAL:
        return Branch.T1_AT_CRIT
    if pc.pseudo_symmetric:
        return Branch.T2_PSEUDO_SYM_LATTICE if pc.lattice else Branch.T2_PSEUDO_SYM_NONLATTICE
    return Branch.T2_LATTICE if pc.lattice else Branch.T2_NONLATTICE


def na_prime_mod(n: int, a_prime: float, h_prime: float) -> float:
    """(n·a′) mod h′ by binary doubling, reducing after every step.

    Each doubling and fmod is exact in binary floating point; only the additions
    round, so the error stays within a few ulps of h′ for any n.
    """
    if not h_prime > 0:
        raise ValueError(f"h_prime must be positive, got {h_prime}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    result = 0.0
    term = math.fmod(a_prime, h_prime)
    if term < 0:
        term += h_prime
    while n:
        if n & 1:
            result = math.fmod(result + term, h_prime)
        term = math.fmod(2.0 * term, h_prime)
        n >>= 1
    return result if result < h_prime else 0.0


def _below_critical_constant(h: float) -> float:
    """h(e^{h/2}+1)/(2(e^{h/2}−1)); 2 at h = 0."""
    if h == 0:
        return 2.0
    half = h / 2.0
    return half * (math.exp(half) + 1.0) / math.expm1(half)


def _tie_factor(h: float) -> float:
    """2e^{h/2}/(e^{h/2}+1); 1 at h = 0."""
    e = math.exp(h / 2.0)
    return 2.0 * e / (e + 1.0)


def _check_above_critical(ra: RateAnalysis, ts: TiltedStats) -> None:
    if ra.rho >= 1.0 - RHO_POLE_GAP:
        raise ValueError(
            f"rho = {ra.rho:.9g} is within {RHO_POLE_GAP:g} of 1; use the at-critical branch"
        )
    if ts.sigma00 <= VARIANCE_FLOOR:
        raise ValueError("no above-critical regime exists: Z(eta) is singular")


def _nonsingular_above(
    ra: RateAnalysis,
    ts: TiltedStats,
    cc: ChannelClass,
    pc: PairClass,
    n: int,
    tie: TieRule,
    branch: Branch,
) -> tuple[float, float, float]:
    """Returns (prefactor, I_n, c₂)."""
    rho, h = ra.rho, cc.nu_span
    det = 0.0 if pc.pseudo_symmetric else ts.det_sigma
    sigma_eff = ts.sigma00 + rho * det / ts.mu2
    c2 = ra.eta * math.sqrt(2.0 * math.pi * ts.mu2)
    root = math.sqrt(sigma_eff)

    if pc.z_lattice is None:
        psi = psi_tilde_rho_h(rho, h) if tie is TieRule.TIE_AS_ERROR else psi_rho_h(rho, h)
        i_n = psi / root
    else:
        h_prime, a_prime = pc.z_lattice
        series = psi_tilde_series if tie is TieRule.TIE_AS_ERROR else psi_series
        x_n = na_prime_mod(n, a_prime, h_prime) - math.log(c2 * math.sqrt(n))
        if det == 0.0:
            i_n = series(rho, h, h_prime, x_n) / root
        else:
            spread = det / (2.0 * sigma_eff)
            i_n = gauss_expect(lambda v: series(rho, h, h_prime, x_n - spread * v * v)) / root

    scale = (1.0 + rho) ** rho / math.sqrt((2.0 * math.pi) ** (1.0 + rho) * ts.mu2**rho)
    prefactor = scale * i_n * n ** (-(1.0 + rho) / 2.0)
    return prefactor, i_n, c2


def _singular_above(
    ra: RateAnalysis, ts: TiltedStats, pc: PairClass, n: int, tie: TieRule
) -> tuple[float, float]:
    """Returns (prefactor, alt_prefactor) for the two denominator readings."""
    rho = ra.rho
    if pc.z_lattice is None:
        psi = tpsin_rho(rho) if tie is TieRule.TIE_AS_ERROR else psin_rho(rho)
    else:
        h_prime, a_prime = pc.z_lattice
        series = tpsin_series if tie is TieRule.TIE_AS_ERROR else psin_series
        psi = series(rho, h_prime, na_prime_mod(n, a_prime, h_prime))
    prefactor = psi / math.sqrt(2.0 * math.pi * n * ts.sigma00)
    alt = psi / (math.sqrt(2.0 * math.pi * n) * ts.sigma00)
    return prefactor, alt


def predict(
    ra: RateAnalysis,
    ts: TiltedStats,
    cc: ChannelClass,
    pc: PairClass,
    n: int,
    tie: TieRule | str = TieRule.UNIFORM_RANDOM,
) -> Prediction:
    """Evaluate the exact-asymptotic prediction of P_RC(n).

    Args:
        ra: Solved exponent problem
        ts: Tilted moments at ``ra.rho``
        cc: Channel classification
        pc: Pair classification at ``ra.eta``
        n: Block length, n ≥ 1
        tie: Tie-resolution rule

    Returns:
        Prediction with log_value = −n·E_r(R) + log(prefactor)

    Raises:
        ValueError: For n < 1, an above-critical request on a singular Z(η), or ρ at
            the Γ(1−ρ) pole
    """
    if n < 1:
        raise ValueError(f"block length must be at least 1, got {n}")
    tie = TieRule(tie)
    branch = select_branch(ra, cc, pc)
    h = cc.nu_span
    i_n = c2 = alt = None

    if branch in (Branch.T1_BELOW, Branch.T1_AT_CRIT):
        variance = ts.mu2 + ts.sigma11
        prefactor = _below_critical_constant(h) / math.sqrt(2.0 * math.pi * n * variance)
        if branch is Branch.T1_AT_CRIT:
            prefactor /= 2.0
        if tie is TieRule.TIE_AS_ERROR:
            prefactor *= _tie_factor(h)
    elif branch in (Branch.T3_BELOW, Branch.T3_AT_CRIT):
        prefactor = 0.5 if branch is Branch.T3_BELOW else 0.25
        if tie is TieRule.TIE_AS_ERROR:
            prefactor *= 2.0
    elif branch in (Branch.T4_LATTICE, Branch.T4_NONLATTICE):
        _check_above_critical(ra, ts)
        prefactor, alt = _singular_above(ra, ts, pc, n, tie)
    else:
        _check_above_critical(ra, ts)
        prefactor, i_n, c2 = _nonsingular_above(ra, ts, cc, pc, n, tie, branch)

    if not prefactor > 0:
        raise RuntimeError(f"nonpositive prefactor {prefactor!r} on branch {branch.value}")
    return Prediction(
        n=n,
        branch=branch,
        log_value=-n * ra.er + math.log(prefactor),
        prefactor=prefactor,
        i_n=i_n,
        c2=c2,
        oscillating=branch.oscillates,
        alt_prefactor=alt,
    )
