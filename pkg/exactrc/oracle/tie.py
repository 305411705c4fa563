"""Error probability of ML decoding against M − 1 independent competitors."""

import math

import numpy as np

from ..asymptotics import TieRule

# Slack allowed on p₊ + p₀ ≤ 1 for sums accumulated in floating point.
SIMPLEX_SLACK = 1e-12

# The alternating series for ω_M(s) is used while (M − 1)s stays below this.
SERIES_LIMIT = 0.5


def _omega_m(s: float, m: float) -> float:
    """ω_M(s) = 1 − (1 − (1−s)^M)/(Ms), the uniform tie-breaking loss at tie share s."""
    if s <= 0.0:
        return 0.0
    if (m - 1.0) * s < SERIES_LIMIT:
        # Σ_{j≥1} (−1)^{j+1} C(M−1, j) s^j/(j+1)
        total = 0.0
        term = (m - 1.0) * s
        j = 1
        while term != 0.0:
            contribution = term / (j + 1)
            total += contribution if j % 2 else -contribution
            if abs(contribution) <= 1e-17 * abs(total):
                break
            term *= (m - 1.0 - j) * s / (j + 1)
            j += 1
        return total
    if s >= 1.0:
        return 1.0 - 1.0 / (m * s)
    return 1.0 + math.expm1(m * math.log1p(-s)) / (m * s)


def q_m(p_plus: float, p_zero: float, m: int, tie: TieRule | str = TieRule.UNIFORM_RANDOM) -> float:
    """Probability that ML decoding fails with M codewords.

    Each of the M − 1 competitors independently beats the sent codeword with
    probability ``p_plus`` and ties it with probability ``p_zero``.

    Uniform tie-breaking gives 1 − ((1−p₊)^M − (1−p₀−p₊)^M)/(Mp₀), evaluated as
    (1 − a^{M−1}) + a^{M−1}·ω_M(p₀/a) with a = 1 − p₊ so no term cancels. Ties counted
    as errors give 1 − (1−p₀−p₊)^{M−1}.

    Args:
        p_plus: Probability a competitor has strictly higher likelihood
        p_zero: Probability a competitor has equal likelihood
        m: Codebook size M ≥ 2
        tie: Tie-resolution rule

    Returns:
        Error probability in [0, 1]

    Raises:
        ValueError: If the probabilities leave the simplex or m < 2
    """
    if m < 2:
        raise ValueError(f"codebook size must be at least 2, got {m}")
    if p_plus < 0 or p_zero < 0 or p_plus + p_zero > 1.0 + SIMPLEX_SLACK:
        raise ValueError(f"(p_plus, p_zero) = ({p_plus!r}, {p_zero!r}) is outside the simplex")
    tie = TieRule(tie)
    mf = float(m)

    if tie is TieRule.TIE_AS_ERROR:
        hit = p_plus + p_zero
        if hit >= 1.0:
            return 1.0
        return -math.expm1((mf - 1.0) * math.log1p(-hit))

    if p_plus >= 1.0:
        return 1.0
    a = 1.0 - p_plus
    log_stay = (mf - 1.0) * math.log1p(-p_plus)
    survive = math.exp(log_stay)
    s = min(p_zero / a, 1.0)
    value = -math.expm1(log_stay) + survive * _omega_m(s, mf)
    return min(max(value, 0.0), 1.0)


# Below this, 1 − p and (1 − p)^{M−1} = e^{−(M−1)p} are exact in double precision.
RARE_LOG = -40.0

# exp() of anything below this is subnormal or zero.
TINY_LOG = -700.0


def _log_union(log_x: float) -> float:
    """log(1 − e^{−x}) for x = e^{log_x}."""
    if log_x < TINY_LOG:
        return log_x
    return math.log(-math.expm1(-math.exp(log_x)))


def _omega_rare(log_y: float, m: float) -> float:
    """ω_M(s) for s below e^{RARE_LOG}, given y = (M − 1)s."""
    y = math.exp(log_y)
    if y < SERIES_LIMIT:
        total = 0.0
        term = y
        j = 1
        while term != 0.0:
            contribution = term / (j + 1)
            total += contribution if j % 2 else -contribution
            if abs(contribution) <= 1e-17 * abs(total):
                break
            term *= (m - 1.0 - j) / (m - 1.0) * y / (j + 1)
            j += 1
        return total
    ms = y * m / (m - 1.0)
    return 1.0 + math.expm1(-ms) / ms


def log_q_m(
    log_p_plus: float,
    log_p_zero: float,
    m: int,
    tie: TieRule | str = TieRule.UNIFORM_RANDOM,
) -> float:
    """log q_M from log-probabilities.

    Stays finite when p₊ and p₀ are far below the double range, as long as
    (M − 1)p₊ and (M − 1)p₀ are not.

    Raises:
        ValueError: If m < 2
    """
    if m < 2:
        raise ValueError(f"codebook size must be at least 2, got {m}")
    tie = TieRule(tie)
    if max(log_p_plus, log_p_zero) > RARE_LOG:
        q = q_m(math.exp(log_p_plus), math.exp(log_p_zero), m, tie)
        return math.log(q) if q > 0 else -math.inf

    log_m1 = math.log(m - 1)
    if tie is TieRule.TIE_AS_ERROR:
        return _log_union(log_m1 + float(np.logaddexp(log_p_plus, log_p_zero)))
    log_x = log_m1 + log_p_plus
    log_y = log_m1 + log_p_zero
    if max(log_x, log_y) < TINY_LOG:
        return float(np.logaddexp(log_x, log_y - math.log(2.0)))
    omega = _omega_rare(log_y, float(m)) if log_y > TINY_LOG else 0.0
    if log_x < TINY_LOG:
        value = omega
    else:
        x = math.exp(log_x)
        value = -math.expm1(-x) + math.exp(-x) * omega
    return math.log(value) if value > 0 else float(np.logaddexp(log_x, log_y - math.log(2.0)))
