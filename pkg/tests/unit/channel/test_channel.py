"""Unit tests for exactrc.channel.channel (validation, ν table, mutual information)."""

import math

import numpy as np
import pytest

from exactrc.channel import (
    NEG_INFINITY,
    DiscreteChannel,
    InputDistribution,
    binary_erasure_channel,
    binary_symmetric_channel,
    channel_from_arrays,
    mutual_information,
    nu_table,
)


def binary_entropy(p: float) -> float:
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def test_input_distribution_rejects_zero_entry():
    """InputDistribution requires strictly positive probabilities."""
    with pytest.raises(ValueError, match="strictly positive"):
        InputDistribution(np.array([1.0, 0.0]))


def test_input_distribution_is_read_only():
    """Stored probabilities cannot be modified in place."""
    dist = InputDistribution(np.array([0.25, 0.75]))
    with pytest.raises(ValueError):
        dist.probs[0] = 0.5


def test_discrete_channel_rejects_bad_row_sum():
    """DiscreteChannel reports the offending row."""
    with pytest.raises(ValueError, match="row 0 sums to 1.1"):
        DiscreteChannel(np.array([[0.9, 0.2], [0.1, 0.9]]), InputDistribution(np.array([0.5, 0.5])))


def test_discrete_channel_rejects_shape_mismatch():
    """Rows must match the input alphabet."""
    with pytest.raises(ValueError, match="rows"):
        DiscreteChannel(np.array([[1.0, 0.0]]), InputDistribution(np.array([0.5, 0.5])))


def test_joint_sums_to_one(asymmetric):
    """P_X(x)W(y|x) is a probability table."""
    assert asymmetric.joint.sum() == pytest.approx(1.0, abs=1e-12)
    assert asymmetric.support.all()


def test_nu_table_bsc_value():
    """ν(0, 0, 1) = log(0.1/0.9) for BSC(0.1)."""
    nt = nu_table(binary_symmetric_channel(0.1))
    assert nt.nu[0, 0, 1] == pytest.approx(math.log(1 / 9), abs=1e-12)
    assert nt.nu[0, 1, 1] == pytest.approx(math.log(9), abs=1e-12)


def test_nu_table_diagonal_is_zero(asymmetric):
    """ν(x, y, x) = 0 on every supported atom."""
    nt = nu_table(asymmetric)
    for x, y in nt.atoms():
        assert nt.nu[x, y, x] == 0.0


def test_nu_table_bec_negative_infinity():
    """A competitor with zero likelihood gives −∞."""
    nt = nu_table(binary_erasure_channel(0.4))
    assert nt.nu[0, 0, 1] == NEG_INFINITY
    assert nt.nu[0, 1, 1] == 0.0


def test_nu_table_outside_support_is_nan():
    """Cells with W(y|x) = 0 are undefined."""
    nt = nu_table(binary_erasure_channel(0.4))
    assert not nt.support[0, 2]
    assert np.isnan(nt.nu[0, 2]).all()
    assert (0, 2) not in nt.atoms()


def test_finite_values_exclude_negative_infinity():
    """finite_values drops −∞ and undefined cells."""
    nt = nu_table(binary_erasure_channel(0.4))
    values = nt.finite_values()
    assert np.all(np.isfinite(values))
    assert np.all(values == 0.0)


@pytest.mark.parametrize(
    "p,expected",
    [
        (0.0, math.log(2)),
        (0.5, 0.0),
        (0.11, math.log(2) - binary_entropy(0.11)),
    ],
)
def test_mutual_information_bsc(p, expected):
    """I(X;Y) of a BSC with uniform input is log 2 − H_b(p)."""
    assert mutual_information(binary_symmetric_channel(p)) == pytest.approx(expected, abs=1e-12)


def test_mutual_information_bec():
    """I(X;Y) of BEC(e) with uniform input is (1 − e)log 2."""
    assert mutual_information(binary_erasure_channel(0.4)) == pytest.approx(
        0.6 * math.log(2), abs=1e-12
    )


def test_mutual_information_matches_entropy_difference(asymmetric):
    """I(X;Y) = H(Y) − H(Y|X)."""
    joint = asymmetric.joint
    py = joint.sum(axis=0)
    h_y = -np.sum(py * np.log(py))
    h_y_given_x = -np.sum(joint * np.log(asymmetric.matrix))
    assert mutual_information(asymmetric) == pytest.approx(h_y - h_y_given_x, abs=1e-12)


def test_mutual_information_invariant_under_relabeling(asymmetric):
    rows, cols = [2, 0, 1], [1, 2, 0]
    matrix = np.asarray(asymmetric.matrix)[rows][:, cols]
    relabeled = channel_from_arrays(np.asarray(asymmetric.input.probs)[rows], matrix)
    assert mutual_information(relabeled) == pytest.approx(
        mutual_information(asymmetric), abs=1e-14
    )


@pytest.mark.parametrize("shape", [(2, 2), (2, 5), (4, 3), (3, 3)])
def test_mutual_information_bounds(random_channel, shape):
    """0 ≤ I(X;Y) ≤ min(log|X|, log|Y|)."""
    rng = np.random.default_rng(7)
    for _ in range(10):
        ch = random_channel(rng, *shape)
        mi = mutual_information(ch)
        assert -1e-15 <= mi <= min(math.log(ch.num_inputs), math.log(ch.num_outputs)) + 1e-12
