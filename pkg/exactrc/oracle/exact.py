"""Exact P_RC(n) by enumerating joint types."""

import math
import time

import numpy as np
from scipy.special import gammaln, logsumexp

from ..asymptotics import TieRule
from ..channel import DiscreteChannel, NuTable, nu_table
from ..classify import classify_channel
from ..config import get_settings
from ..logging import log_computation
from .distribution import AtomGroups, Rounding, lattice_groups, ratio_groups
from .estimate import OracleEstimate, OracleMethod
from .tie import log_q_m


def _check_type_count(groups: AtomGroups, n: int) -> int:
    count = math.comb(n + groups.size - 1, groups.size - 1)
    cap = get_settings().max_types
    if count > cap:
        raise RuntimeError(f"{count} joint types exceed the cap of {cap}")
    return count


def _log_type_sum(groups: AtomGroups, n: int, m: int, tie: TieRule) -> float:
    """log Σ over group-level types of multinomial weight × q_M(p₊, p₀); −∞ if empty."""
    _check_type_count(groups, n)
    log_p = np.log(groups.probs)
    last = groups.size - 1
    terms: list[float] = []

    def visit(g: int, remaining: int, dist, log_weight: float) -> None:
        if g == last:
            step = dist.convolve(groups.power(g, remaining)) if remaining else dist
            lw = log_weight - gammaln(remaining + 1) + remaining * log_p[g]
            lq = log_q_m(step.log_p_plus, step.log_p_zero, m, tie)
            if lq > -math.inf:
                terms.append(lw + lq)
            return
        step = dist
        for c in range(remaining + 1):
            if c:
                step = step.convolve(groups.increments[g])
            lw = log_weight - gammaln(c + 1) + c * log_p[g]
            visit(g + 1, remaining - c, step, lw)

    visit(0, n, groups.identity, float(gammaln(n + 1)))
    if not terms:
        return -math.inf
    return float(logsumexp(terms))


def _log_bracket(log_lower: float, log_upper: float) -> tuple[float, float]:
    """log of the midpoint and of the half-width of [lower, upper]."""
    if log_upper == -math.inf:
        return -math.inf, -math.inf
    log_mid = float(np.logaddexp(log_lower, log_upper)) - math.log(2.0)
    if log_lower >= log_upper:
        return log_mid, -math.inf
    log_half = log_upper + math.log(-math.expm1(log_lower - log_upper)) - math.log(2.0)
    return log_mid, log_half


def exact_prc(
    ch: DiscreteChannel,
    n: int,
    m: int,
    tie: TieRule | str = TieRule.UNIFORM_RANDOM,
    *,
    grid: float | None = None,
    nt: NuTable | None = None,
) -> OracleEstimate:
    """Random-coding error probability for block length n and M codewords.

    Lattice and singular channels are summed exactly on their ν lattice. Nonlattice
    channels are summed exactly over rational likelihood ratios unless ``grid`` is
    given, in which case floor and ceil rounding onto the grid bracket the value and
    the midpoint is returned with stderr equal to the half-width.

    Args:
        ch: A validated channel
        n: Block length, n ≥ 1
        m: Codebook size M ≥ 2
        tie: Tie-resolution rule
        grid: Grid span for the bracketing mode on nonlattice channels
        nt: Optional precomputed ν table

    Returns:
        OracleEstimate

    Raises:
        ValueError: If n < 1 or m < 2
        RuntimeError: If the type count or a support exceeds its cap
    """
    if n < 1:
        raise ValueError(f"block length must be at least 1, got {n}")
    if m < 2:
        raise ValueError(f"codebook size must be at least 2, got {m}")
    tie = TieRule(tie)
    nt = nt if nt is not None else nu_table(ch)
    start = time.perf_counter()
    cc = classify_channel(nt, ch)
    lower = upper = None

    if cc.singular or cc.nu_span > 0:
        log_value = _log_type_sum(lattice_groups(nt, ch), n, m, tie)
        log_stderr = -math.inf
    elif grid is None:
        log_value = _log_type_sum(ratio_groups(nt, ch), n, m, tie)
        log_stderr = -math.inf
    else:
        log_lower = _log_type_sum(lattice_groups(nt, ch, grid, Rounding.FLOOR), n, m, tie)
        log_upper = _log_type_sum(lattice_groups(nt, ch, grid, Rounding.CEIL), n, m, tie)
        lower, upper = math.exp(log_lower), math.exp(log_upper)
        log_value, log_stderr = _log_bracket(log_lower, log_upper)

    estimate = OracleEstimate(
        value=math.exp(log_value),
        stderr=math.exp(log_stderr),
        method=OracleMethod.EXACT_TYPES,
        n=n,
        m=m,
        tie=tie,
        lower=lower,
        upper=upper,
        log_value=log_value,
        log_stderr=log_stderr,
    )
    log_computation(
        "exact_prc",
        {"n": n, "m": m, "tie": tie.value, "grid": grid},
        {"value": estimate.value, "log_value": estimate.log_value, "stderr": estimate.stderr},
        duration_seconds=time.perf_counter() - start,
    )
    return estimate
