"""Unit tests for exactrc.classify.classify (channel and pair classification)."""

import math

import pytest

from exactrc.channel import (
    binary_erasure_channel,
    binary_symmetric_channel,
    channel_from_arrays,
    mutual_information,
    nu_table,
    q_ary_erasure_channel,
)
from exactrc.classify import classify_channel, classify_pair
from exactrc.exponent import critical_rate, solve_exponent, z_support
from exactrc.tilt import tilted_stats


def ternary_symmetric_channel(q: float):
    return channel_from_arrays(
        [1 / 3, 1 / 3, 1 / 3],
        [[1 - 2 * q, q, q], [q, 1 - 2 * q, q], [q, q, 1 - 2 * q]],
    )


def above_critical_pair(ch):
    """Solve at the midpoint of (R_crit, I) and return (rate analysis, Z support, stats)."""
    nt = nu_table(ch)
    R = 0.5 * (critical_rate(ch, nt) + mutual_information(ch, nt))
    ra = solve_exponent(ch, R, nt=nt)
    zs = z_support(ch, ra.eta, nt)
    return ra, zs, tilted_stats(zs, ra.rho, R)


def test_bsc_is_lattice_and_symmetric():
    """ν of BSC(p) lives on log((1−p)/p)·ℤ."""
    ch = binary_symmetric_channel(0.11)
    cc = classify_channel(nu_table(ch), ch)
    assert not cc.singular
    assert cc.nu_span == pytest.approx(math.log(0.89 / 0.11), rel=1e-12)
    assert cc.strongly_symmetric


def test_bec_is_singular():
    """Every finite ν of a BEC is zero."""
    ch = binary_erasure_channel(0.4)
    cc = classify_channel(nu_table(ch), ch)
    assert cc.singular
    assert cc.nu_span == 0.0


def test_asymmetric_channel_is_nonlattice(asymmetric):
    cc = classify_channel(nu_table(asymmetric), asymmetric)
    assert not cc.singular
    assert cc.nu_span == 0.0
    assert not cc.strongly_symmetric


@pytest.mark.parametrize(
    "ch",
    [
        binary_symmetric_channel(0.05),
        binary_symmetric_channel(0.11),
        binary_symmetric_channel(0.3),
        ternary_symmetric_channel(0.1),
        ternary_symmetric_channel(0.2),
    ],
)
def test_strongly_symmetric_channels_are_pseudo_symmetric(ch):
    """Strong symmetry gives pseudo-symmetry and h′ = η·h."""
    cc = classify_channel(nu_table(ch), ch)
    assert cc.strongly_symmetric
    ra, zs, stats = above_critical_pair(ch)
    pc = classify_pair(zs, stats)
    assert pc.pseudo_symmetric
    assert pc.lattice
    h_prime, a_prime = pc.z_lattice
    assert h_prime == pytest.approx(ra.eta * cc.nu_span, abs=1e-9)
    assert 0.0 <= a_prime < h_prime


def test_asymmetric_pair_is_neither_lattice_nor_pseudo_symmetric(asymmetric):
    _, zs, stats = above_critical_pair(asymmetric)
    pc = classify_pair(zs, stats)
    assert not pc.lattice
    assert not pc.pseudo_symmetric
    assert stats.det_sigma > 0


def test_erasure_pair_lattice_offset():
    """Z(η) of the 4-ary erasure channel takes the values −log 4 and 0."""
    ch = q_ary_erasure_channel(4, 0.3)
    _, zs, stats = above_critical_pair(ch)
    pc = classify_pair(zs, stats)
    h_prime, a_prime = pc.z_lattice
    assert h_prime == pytest.approx(math.log(4), rel=1e-12)
    assert a_prime == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "ch,singular",
    [
        (binary_erasure_channel(0.4), True),
        (q_ary_erasure_channel(4, 0.3), True),
        (binary_symmetric_channel(0.11), False),
        (ternary_symmetric_channel(0.1), False),
    ],
)
def test_singular_iff_no_inner_variance(ch, singular):
    """A channel is singular exactly when μ₂ vanishes."""
    cc = classify_channel(nu_table(ch), ch)
    _, _, stats = above_critical_pair(ch)
    assert cc.singular is singular
    assert (stats.mu2 <= 1e-12) is singular


def test_asymmetric_channel_mu2_positive(asymmetric):
    _, _, stats = above_critical_pair(asymmetric)
    assert stats.mu2 > 1e-12
