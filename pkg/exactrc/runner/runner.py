"""Runner for batch analyses: prediction, oracle and comparison tables."""

import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator

from ..asymptotics import TieRule, predict, select_branch
from ..asymptotics.asymptotics import RHO_POLE_GAP
from ..channel import DiscreteChannel, NuTable, load_channel, mutual_information, nu_table
from ..classify import ChannelClass, PairClass, classify_channel, classify_pair, fit_lattice
from ..config import get_settings
from ..exponent import RateAnalysis, Regime, critical_rate, solve_exponent, z_support
from ..logging import initialize_session_log, log_computation
from ..oracle import (
    OracleEstimate,
    brute_force_prc,
    effective_rate,
    exact_prc,
    mc_prc,
)
from ..tilt import TiltedStats, tilted_stats

_RATE_PATTERN = re.compile(r"^\s*(i|crit)\s*\*\s*([0-9.eE+-]+)\s*$", re.IGNORECASE)

METHODS = ("auto", "exact", "mc", "brute")


class RunConfig(BaseModel):
    """Options shared by every batch command."""

    channel: Path
    rate: str
    n: list[int] = Field(default_factory=list)
    tie: TieRule = TieRule.UNIFORM_RANDOM
    samples: int = Field(default=100_000, ge=100)
    seed: int = Field(default=0, ge=0)
    grid: float | None = Field(default=None, gt=0)
    force_regime: Regime | None = None
    crit_tol: float | None = Field(default=None, gt=0)
    threads: int | None = Field(default=None, ge=1)
    method: str = "auto"
    verbose: bool = False

    @field_validator("n")
    @classmethod
    def _increasing(cls, value: list[int]) -> list[int]:
        if any(k < 1 for k in value):
            raise ValueError("block lengths must be positive integers")
        if any(b <= a for a, b in zip(value, value[1:], strict=False)):
            raise ValueError("block lengths must be strictly increasing")
        return value

    @field_validator("method")
    @classmethod
    def _known_method(cls, value: str) -> str:
        if value not in METHODS:
            raise ValueError(f"method must be one of {', '.join(METHODS)}")
        return value


@dataclass(frozen=True)
class ChannelContext:
    """A loaded channel with the quantities every command needs."""

    ch: DiscreteChannel
    nt: NuTable
    mi: float
    rcrit: float
    cc: ChannelClass


@dataclass(frozen=True)
class SolvedRate:
    ra: RateAnalysis
    ts: TiltedStats
    pc: PairClass


def load_context(path: Path) -> ChannelContext:
    """Read a channel file and classify the channel."""
    ch = load_channel(Path(path).read_text(encoding="utf-8"))
    nt = nu_table(ch)
    return ChannelContext(
        ch=ch,
        nt=nt,
        mi=mutual_information(ch, nt),
        rcrit=critical_rate(ch, nt),
        cc=classify_channel(nt, ch),
    )


def parse_rate(spec: str, mi: float, rcrit: float) -> float:
    """Resolve a rate spec: nats, ``I*f``, ``crit*f`` or ``mid`` ((R_crit + I)/2)."""
    text = spec.strip()
    if text.lower() == "mid":
        return 0.5 * (rcrit + mi)
    match = _RATE_PATTERN.match(text)
    try:
        if match:
            base = mi if match.group(1).lower() == "i" else rcrit
            return base * float(match.group(2))
        return float(text)
    except ValueError as e:
        raise ValueError(f"unrecognized rate spec {spec!r}") from e


def solve_rate(ctx: ChannelContext, R: float, cfg: RunConfig) -> SolvedRate:
    """Solve the exponent at R, tilt, and classify the pair.

    Rates whose optimal ρ sits at the Γ(1−ρ) pole are treated as at-critical.
    """
    ra = solve_exponent(
        ctx.ch, R, crit_tol=cfg.crit_tol, force_regime=cfg.force_regime, nt=ctx.nt
    )
    if ra.regime is Regime.ABOVE_CRITICAL and ra.rho >= 1.0 - RHO_POLE_GAP:
        ra = replace(ra, regime=Regime.AT_CRITICAL)
    zs = z_support(ctx.ch, ra.eta, ctx.nt)
    ts = tilted_stats(zs, ra.rho, R)
    return SolvedRate(ra=ra, ts=ts, pc=classify_pair(zs, ts))


def _symmetry_note(cc: ChannelClass, solved: SolvedRate) -> str:
    if not cc.strongly_symmetric:
        return "not strongly symmetric"
    pc, eta = solved.pc, solved.ra.eta
    lattice_ok = (cc.nu_span > 0) == pc.lattice
    if lattice_ok and pc.z_lattice is not None and cc.nu_span > 0:
        lattice_ok = abs(pc.z_lattice[0] / cc.nu_span - eta) <= 1e-9
    if pc.pseudo_symmetric and lattice_ok:
        return "strongly symmetric: pseudo-symmetric with h' = eta*h, as expected"
    return "strongly symmetric but the pair classification disagrees"


def analyze(cfg: RunConfig) -> dict[str, Any]:
    """Exponent, tilted moments and classifications at one rate."""
    initialize_session_log()
    ctx = load_context(cfg.channel)
    R = parse_rate(cfg.rate, ctx.mi, ctx.rcrit)
    solved = solve_rate(ctx, R, cfg)
    ra, ts, pc, cc = solved.ra, solved.ts, solved.pc, ctx.cc
    report: dict[str, Any] = {
        "I": ctx.mi,
        "R_crit": ctx.rcrit,
        "R": R,
        "regime": ra.regime.value,
        "E_r": ra.er,
        "rho": ra.rho,
        "eta": ra.eta,
        "Delta": ts.delta,
        "mu0": ts.mu0,
        "mu1": ts.mu1,
        "mu2": ts.mu2,
        "sigma00": ts.sigma00,
        "sigma01": ts.sigma01,
        "sigma11": ts.sigma11,
        "det_sigma": ts.det_sigma,
        "singular": cc.singular,
        "nu_span": cc.nu_span,
        "strongly_symmetric": cc.strongly_symmetric,
        "h_prime": pc.z_lattice[0] if pc.z_lattice else None,
        "a_prime": pc.z_lattice[1] if pc.z_lattice else None,
        "pseudo_symmetric": pc.pseudo_symmetric,
        "branch": select_branch(ra, cc, pc).value,
        "symmetry_check": _symmetry_note(cc, solved),
    }
    tol = get_settings().lattice_tol
    if not cc.singular and cc.nu_span == 0:
        fit = fit_lattice(ctx.nt.finite_values(), tol)
        report["nu_candidate_span"] = fit.span
        report["nu_max_residue"] = fit.max_residue
    if pc.z_lattice is None:
        zs = z_support(ctx.ch, ra.eta, ctx.nt)
        fit = fit_lattice(zs.z0, tol)
        report["z_candidate_span"] = fit.span
        report["z_max_residue"] = fit.max_residue
    log_computation("analyze", {"channel": str(cfg.channel), "rate": cfg.rate}, report)
    return report


def _prediction_row(ctx: ChannelContext, solved: SolvedRate, n: int, cfg: RunConfig) -> dict:
    pred = predict(solved.ra, solved.ts, ctx.cc, solved.pc, n, cfg.tie)
    row = {
        "n": n,
        "branch": pred.branch.value,
        "E_r": solved.ra.er,
        "prefactor": pred.prefactor,
        "I_n": pred.i_n,
        "log10_P": pred.log_value / math.log(10.0),
        "oscillating": pred.oscillating,
    }
    if cfg.verbose:
        row["alt_prefactor"] = pred.alt_prefactor
        row["c2"] = pred.c2
    return row


def predict_rows(cfg: RunConfig) -> list[dict[str, Any]]:
    """One prediction row per block length at the nominal rate."""
    initialize_session_log()
    ctx = load_context(cfg.channel)
    R = parse_rate(cfg.rate, ctx.mi, ctx.rcrit)
    solved = solve_rate(ctx, R, cfg)
    rows = [_prediction_row(ctx, solved, n, cfg) for n in cfg.n]
    log_computation("predict", {"channel": str(cfg.channel), "rate": cfg.rate, "n": cfg.n}, rows)
    return rows


def _run_oracle(
    ctx: ChannelContext, solved: SolvedRate, n: int, m: int, cfg: RunConfig
) -> OracleEstimate:
    if cfg.method == "brute":
        return brute_force_prc(ctx.ch, n, m, cfg.tie)
    if cfg.method in ("auto", "exact"):
        try:
            return exact_prc(ctx.ch, n, m, cfg.tie, grid=cfg.grid, nt=ctx.nt)
        except RuntimeError:
            if cfg.method == "exact":
                raise
    return mc_prc(
        ctx.ch,
        solved.ra,
        solved.ts,
        n,
        m,
        cfg.tie,
        cfg.samples,
        cfg.seed,
        grid=cfg.grid,
        threads=cfg.threads,
        nt=ctx.nt,
    )


def _oracle_row(est: OracleEstimate, r_n: float) -> dict[str, Any]:
    row = {
        "n": est.n,
        "M_n": est.m,
        "R_n": r_n,
        "method": est.method.value,
        "value": est.value,
        "log10_value": est.log_value / math.log(10.0),
        "stderr": est.stderr,
    }
    if est.lower is not None:
        row["lower"] = est.lower
        row["upper"] = est.upper
    return row


def oracle_rows(cfg: RunConfig) -> list[dict[str, Any]]:
    """One oracle row per block length at M_n = ⌈e^{nR}⌉."""
    initialize_session_log()
    ctx = load_context(cfg.channel)
    R = parse_rate(cfg.rate, ctx.mi, ctx.rcrit)
    solved = solve_rate(ctx, R, cfg)
    rows = []
    for n in cfg.n:
        m, r_n = effective_rate(n, R)
        rows.append(_oracle_row(_run_oracle(ctx, solved, n, m, cfg), r_n))
    log_computation("oracle", {"channel": str(cfg.channel), "rate": cfg.rate, "n": cfg.n}, rows)
    return rows


def compare_rows(cfg: RunConfig) -> list[dict[str, Any]]:
    """Oracle against the prediction re-solved at each effective rate R_n."""
    initialize_session_log()
    ctx = load_context(cfg.channel)
    R = parse_rate(cfg.rate, ctx.mi, ctx.rcrit)
    rows = []
    for n in cfg.n:
        m, r_n = effective_rate(n, R)
        solved = solve_rate(ctx, r_n, cfg)
        est = _run_oracle(ctx, solved, n, m, cfg)
        pred = predict(solved.ra, solved.ts, ctx.cc, solved.pc, n, cfg.tie)
        # both sides can sit far below the double range at large n
        row = {
            "n": n,
            "M_n": m,
            "R_n": r_n,
            "branch": pred.branch.value,
            "P_oracle": est.value,
            "P_pred": math.exp(pred.log_value),
            "log10_P_oracle": est.log_value / math.log(10.0),
            "log10_P_pred": pred.log_value / math.log(10.0),
            "ratio": math.exp(est.log_value - pred.log_value),
            "stderr_ratio": math.exp(est.log_stderr - pred.log_value),
        }
        if cfg.verbose and pred.alt_prefactor is not None:
            log_alt = -n * solved.ra.er + math.log(pred.alt_prefactor)
            row["ratio_alt"] = math.exp(est.log_value - log_alt)
        rows.append(row)
    log_computation("compare", {"channel": str(cfg.channel), "rate": cfg.rate, "n": cfg.n}, rows)
    return rows
