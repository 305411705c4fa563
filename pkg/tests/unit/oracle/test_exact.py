"""Unit tests for exactrc.oracle.exact and exactrc.oracle.brute_force."""

import math

import numpy as np
import pytest
from scipy.special import logsumexp
from scipy.stats import binom

from exactrc.asymptotics import TieRule
from exactrc.channel import binary_erasure_channel, binary_symmetric_channel
from exactrc.config import reset_settings
from exactrc.oracle import OracleMethod, brute_force_prc, exact_prc, log_q_m


def test_exact_bsc_single_symbol():
    """n = 1, M = 2 on BSC(0.1): 0.9·¼ + 0.1·¾ under uniform tie breaking."""
    ch = binary_symmetric_channel(0.1)
    assert exact_prc(ch, 1, 2).value == pytest.approx(0.3, abs=1e-15)
    assert exact_prc(ch, 1, 2, TieRule.TIE_AS_ERROR).value == pytest.approx(0.55, abs=1e-15)


def test_exact_noiseless_and_useless_channels():
    assert exact_prc(binary_symmetric_channel(0.0), 1, 2).value == pytest.approx(0.25, abs=1e-15)
    assert exact_prc(binary_symmetric_channel(0.5), 3, 2).value == pytest.approx(0.5, abs=1e-15)


def test_exact_result_metadata():
    est = exact_prc(binary_erasure_channel(0.4), 4, 3, "error")
    assert est.method is OracleMethod.EXACT_TYPES
    assert est.stderr == 0.0
    assert est.tie is TieRule.TIE_AS_ERROR
    assert (est.n, est.m) == (4, 3)
    assert est.lower is None


@pytest.mark.parametrize("tie", list(TieRule))
@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_exact_matches_brute_force_on_random_channels(random_channel, tie, n, m):
    """Type enumeration reproduces the codebook average on 20 random binary channels."""
    rng = np.random.default_rng(11)
    for _ in range(20):
        ch = random_channel(rng, 2, 2)
        exact = exact_prc(ch, n, m, tie).value
        brute = brute_force_prc(ch, n, m, tie).value
        assert exact == pytest.approx(brute, abs=1e-12)


@pytest.mark.parametrize("tie", list(TieRule))
def test_exact_matches_brute_force_on_structured_channels(tie, bsc, bec, asymmetric):
    assert exact_prc(bsc, 3, 3, tie).value == pytest.approx(
        brute_force_prc(bsc, 3, 3, tie).value, abs=1e-12
    )
    assert exact_prc(bec, 3, 3, tie).value == pytest.approx(
        brute_force_prc(bec, 3, 3, tie).value, abs=1e-12
    )
    assert exact_prc(asymmetric, 2, 2, tie).value == pytest.approx(
        brute_force_prc(asymmetric, 2, 2, tie).value, abs=1e-12
    )


def test_exact_grid_mode_brackets_exact_value(asymmetric):
    exact = exact_prc(asymmetric, 6, 4).value
    bracket = exact_prc(asymmetric, 6, 4, grid=0.01)
    assert bracket.lower <= exact + 1e-15
    assert exact <= bracket.upper + 1e-15
    assert bracket.value == pytest.approx(0.5 * (bracket.lower + bracket.upper))
    assert bracket.stderr == pytest.approx(0.5 * (bracket.upper - bracket.lower))


def test_exact_error_probability_decreases_with_n(bsc):
    """At a fixed rate below capacity the error falls as n grows."""
    values = [exact_prc(bsc, n, max(2, int(np.ceil(np.exp(0.05 * n))))).value for n in (10, 40)]
    assert values[1] < values[0]


def test_exact_log_value_past_double_range(bec):
    """BEC: c unerased symbols leave a tie with probability 2^{-c} and no strict win."""
    n, m = 4000, 10**250
    est = exact_prc(bec, n, m)
    assert est.value == 0.0
    c = np.arange(n + 1)
    log_pmf = binom.logpmf(c, n, 0.6)
    terms = [lp + log_q_m(-math.inf, -k * math.log(2.0), m) for k, lp in zip(c, log_pmf)]
    assert est.log_value == pytest.approx(float(logsumexp(terms)), rel=1e-9)


def test_exact_log_value_matches_value(bsc):
    est = exact_prc(bsc, 12, 5)
    assert est.log_value == pytest.approx(math.log(est.value), rel=1e-12)


@pytest.mark.parametrize("n,m", [(4, 3), (8, 5), (12, 40)])
def test_ties_as_errors_never_below_uniform(bsc, bec, qec, n, m):
    for ch in (bsc, bec, qec):
        uniform = exact_prc(ch, n, m, TieRule.UNIFORM_RANDOM).value
        error = exact_prc(ch, n, m, TieRule.TIE_AS_ERROR).value
        assert error >= uniform


def test_ties_as_errors_never_below_uniform_nonlattice(asymmetric):
    for n, m in [(3, 2), (5, 4)]:
        uniform = exact_prc(asymmetric, n, m, TieRule.UNIFORM_RANDOM).value
        assert exact_prc(asymmetric, n, m, TieRule.TIE_AS_ERROR).value >= uniform


def test_exact_logs_computation(bsc, isolated_logs):
    exact_prc(bsc, 2, 2)
    log_text = next(isolated_logs.glob("session_*/runs.log")).read_text()
    assert '"operation": "exact_prc"' in log_text


@pytest.mark.parametrize("n,m", [(0, 2), (3, 1)])
def test_exact_rejects_invalid_sizes(bsc, n, m):
    with pytest.raises(ValueError):
        exact_prc(bsc, n, m)


def test_exact_type_cap(bsc, monkeypatch):
    monkeypatch.setenv("EXACTRC_MAX_TYPES", "5")
    reset_settings()
    with pytest.raises(RuntimeError, match="joint types"):
        exact_prc(bsc, 10, 2)


def test_brute_force_limits(bsc):
    with pytest.raises(ValueError, match="n <= 5"):
        brute_force_prc(bsc, 6, 2)
    with pytest.raises(ValueError, match="m <= 4"):
        brute_force_prc(bsc, 2, 5)


def test_brute_force_cap(bsc, monkeypatch):
    monkeypatch.setenv("EXACTRC_BRUTE_FORCE_CAP", "100")
    reset_settings()
    with pytest.raises(RuntimeError, match="cap"):
        brute_force_prc(bsc, 3, 3)


def test_brute_force_single_symbol_reference():
    est = brute_force_prc(binary_symmetric_channel(0.1), 1, 2)
    assert est.value == pytest.approx(0.3, abs=1e-15)
    assert est.method is OracleMethod.BRUTE_FORCE
