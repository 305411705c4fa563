"""Shared fixtures: isolated logs and settings, standard channels."""

from unittest.mock import patch

import numpy as np
import pytest

from exactrc.channel import (
    binary_erasure_channel,
    binary_symmetric_channel,
    channel_from_arrays,
    q_ary_erasure_channel,
)
from exactrc.config import reset_settings
from exactrc.logging import logger as log_module


@pytest.fixture(autouse=True)
def isolated_logs(tmp_path):
    """Send the runs log to a temporary directory for every test."""
    logs_dir = tmp_path / "logs"
    with patch.object(log_module, "BASE_LOGS_DIR", logs_dir):
        with patch.dict(
            log_module.__dict__,
            {"_runs_logger": None, "_session_dir": None, "_runs_log_file": None},
        ):
            yield logs_dir


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def bsc():
    return binary_symmetric_channel(0.11)


@pytest.fixture
def bec():
    return binary_erasure_channel(0.4)


@pytest.fixture
def qec():
    return q_ary_erasure_channel(4, 0.3)


@pytest.fixture
def asymmetric():
    """A 3×3 channel with every likelihood ratio finite and no symmetry."""
    return channel_from_arrays(
        [0.3, 0.3, 0.4],
        [[0.7, 0.2, 0.1], [0.15, 0.6, 0.25], [0.05, 0.35, 0.6]],
    )


@pytest.fixture
def random_channel():
    """Factory for channels with Dirichlet rows and a random full-support input."""

    def make(rng: np.random.Generator, num_inputs: int, num_outputs: int):
        matrix = rng.dirichlet(np.ones(num_outputs), size=num_inputs)
        px = rng.dirichlet(np.ones(num_inputs))
        return channel_from_arrays(px, matrix)

    return make
