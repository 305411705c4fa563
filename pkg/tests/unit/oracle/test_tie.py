"""Unit tests for exactrc.oracle.tie (q_M)."""

import math

import numpy as np
import pytest

from exactrc.asymptotics import TieRule
from exactrc.oracle import log_q_m, q_m


def direct_formula(p_plus: float, p_zero: float, m: int) -> float:
    a = 1 - p_plus
    return 1 - (a**m - (a - p_zero) ** m) / (m * p_zero)


def test_q_m_reference_value():
    """1 − (0.75³ − 0.5³)/(3·0.25)."""
    assert q_m(0.25, 0.25, 3) == pytest.approx(0.6041666666666666, abs=1e-15)


def test_q_m_ties_as_errors():
    assert q_m(0.25, 0.25, 3, TieRule.TIE_AS_ERROR) == pytest.approx(0.75, abs=1e-15)
    assert q_m(0.25, 0.25, 3, "error") == pytest.approx(0.75, abs=1e-15)


def test_q_m_edges():
    assert q_m(0.0, 0.0, 5) == 0.0
    assert q_m(1.0, 0.0, 5) == 1.0
    assert q_m(0.0, 1.0, 2) == pytest.approx(0.5, abs=1e-15)
    assert q_m(0.0, 1.0, 4) == pytest.approx(0.75, abs=1e-15)
    assert q_m(0.0, 1.0, 4, TieRule.TIE_AS_ERROR) == 1.0


def test_q_m_no_ties_is_union_of_competitors():
    p = 0.03
    assert q_m(p, 0.0, 20) == pytest.approx(1 - (1 - p) ** 19, rel=1e-14)
    assert q_m(p, 1e-300, 20) == pytest.approx(1 - (1 - p) ** 19, rel=1e-14)


@pytest.mark.parametrize("p_zero", [0.04, 0.05, 0.2, 0.6])
def test_q_m_both_evaluation_paths_match_formula(p_zero):
    """The series and direct forms of the tie loss agree with the textbook formula."""
    assert q_m(0.1, p_zero, 11) == pytest.approx(direct_formula(0.1, p_zero, 11), rel=1e-12)


def test_q_m_huge_codebook():
    """(M − 1)p₊ = 0.01 with M = 10¹⁸ neither overflows nor cancels."""
    m = 10**18
    expected = 1 - (math.exp(-0.01) - math.exp(-0.02)) / 0.01
    assert q_m(1e-20, 1e-20, m) == pytest.approx(expected, rel=1e-9)


def test_q_m_tiny_probabilities_do_not_cancel():
    """For (M − 1)p ≪ 1 the error is about (M − 1)(p₊ + p₀/2)."""
    value = q_m(1e-18, 1e-18, 100)
    assert value == pytest.approx(99 * 1.5e-18, rel=1e-9)


def test_q_m_increases_with_codebook_size():
    values = [q_m(0.05, 0.1, m) for m in (2, 4, 16, 256)]
    assert values == sorted(values)
    assert values[0] < values[-1]


def test_q_m_ties_as_errors_dominates():
    for m in (2, 7, 50):
        assert q_m(0.1, 0.3, m, TieRule.TIE_AS_ERROR) >= q_m(0.1, 0.3, m)


@pytest.mark.parametrize(
    "p_plus,p_zero,m",
    [(-0.1, 0.2, 3), (0.1, -0.2, 3), (0.7, 0.5, 3), (0.1, 0.1, 1)],
)
def test_q_m_rejects_invalid_input(p_plus, p_zero, m):
    with pytest.raises(ValueError):
        q_m(p_plus, p_zero, m)


@pytest.mark.parametrize("tie", list(TieRule))
def test_q_m_increases_in_p_zero_across_series_switch(tie):
    """(M − 1)s crosses 0.5 at p₀ = 0.045 for p₊ = 0.1, M = 11."""
    values = [q_m(0.1, p0, 11, tie) for p0 in np.linspace(0.03, 0.07, 41)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("tie", list(TieRule))
def test_q_m_increases_in_p_plus_across_series_switch(tie):
    """s = p₀/(1 − p₊) crosses 0.05 at p₊ = 0.1 for p₀ = 0.045, M = 11."""
    values = [q_m(pp, 0.045, 11, tie) for pp in np.linspace(0.0, 0.2, 41)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_log_q_m_matches_q_m_in_double_range():
    for tie in TieRule:
        expected = math.log(q_m(0.1, 0.2, 11, tie))
        assert log_q_m(math.log(0.1), math.log(0.2), 11, tie) == pytest.approx(expected, rel=1e-14)


def test_log_q_m_below_double_range():
    """p₊ = p₀ = 10⁻³⁰² with M = 10³⁰⁰ gives (M − 1)p = 0.01 as in the huge-codebook case."""
    m = 10**300
    log_p = math.log(0.01) - math.log(m - 1)
    expected = 1 - (math.exp(-0.01) - math.exp(-0.02)) / 0.01
    assert log_q_m(log_p, log_p, m) == pytest.approx(math.log(expected), abs=1e-9)
    error = log_q_m(log_p, log_p, m, TieRule.TIE_AS_ERROR)
    assert error == pytest.approx(math.log(-math.expm1(-0.02)), abs=1e-9)


def test_log_q_m_tiny_result_stays_finite():
    """(M − 1)(p₊ + p₀/2) with everything far below the smallest double."""
    value = log_q_m(-2000.0, -2000.0, 2)
    assert value == pytest.approx(-2000.0 + math.log(1.5), abs=1e-12)
    assert log_q_m(-math.inf, -math.inf, 5) == -math.inf


def test_log_q_m_large_codebook_saturates():
    m = 10**300
    assert log_q_m(-600.0, -math.inf, m) == pytest.approx(0.0, abs=1e-12)
