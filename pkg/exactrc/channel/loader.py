"""Channel documents: JSON loading with pruning, serialization and standard channels."""

import json
import time

import numpy as np
from pydantic import BaseModel, ValidationError, field_validator

from ..logging import log_computation
from .channel import SUM_TOLERANCE, DiscreteChannel, InputDistribution, PruneReport


class ChannelDocument(BaseModel):
    """Schema of a channel file: ``{"input": [...], "matrix": [[...], ...]}``."""

    input: list[float]
    matrix: list[list[float]]

    @field_validator("input")
    @classmethod
    def _nonempty_input(cls, value: list[float]) -> list[float]:
        if not value:
            raise ValueError("empty input alphabet")
        return value

    @field_validator("matrix")
    @classmethod
    def _nonempty_matrix(cls, value: list[list[float]]) -> list[list[float]]:
        if not value or not value[0]:
            raise ValueError("empty alphabet in matrix")
        width = len(value[0])
        for x, row in enumerate(value):
            if len(row) != width:
                raise ValueError(f"row {x} has {len(row)} entries, expected {width}")
        return value


def channel_from_arrays(input_probs, matrix) -> DiscreteChannel:
    """Validate a channel given as arrays, pruning unused inputs and outputs.

    Args:
        input_probs: Probability of each input symbol
        matrix: Row-major transition probabilities W(y|x)

    Returns:
        DiscreteChannel with zero-probability inputs and all-zero output columns
        removed; ``pruning`` records the kept original indices

    Raises:
        ValueError: On negative entries, bad sums or shape mismatches
    """
    px = np.asarray(input_probs, dtype=float)
    w = np.asarray(matrix, dtype=float)
    if px.ndim != 1 or px.size == 0:
        raise ValueError("empty input alphabet")
    if w.ndim != 2 or w.shape[1] == 0:
        raise ValueError("empty output alphabet")
    if w.shape[0] != px.size:
        raise ValueError(f"matrix has {w.shape[0]} rows but input has {px.size} entries")
    if not (np.all(np.isfinite(px)) and np.all(np.isfinite(w))):
        raise ValueError("channel entries must be finite")
    if np.any(px < 0):
        raise ValueError("negative input probability")
    if np.any(w < 0):
        x, y = np.argwhere(w < 0)[0]
        raise ValueError(f"negative entry W({y}|{x}) = {w[x, y]:.12g}")
    if abs(px.sum() - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"input distribution sums to {px.sum():.12g}")
    for x, total in enumerate(w.sum(axis=1)):
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"row {x} sums to {total:.12g}")

    kept_inputs = np.flatnonzero(px > 0)
    w_kept = w[kept_inputs]
    kept_outputs = np.flatnonzero(w_kept.max(axis=0) > 0)
    report = PruneReport(
        kept_inputs=tuple(int(i) for i in kept_inputs),
        kept_outputs=tuple(int(j) for j in kept_outputs),
        original_shape=(int(w.shape[0]), int(w.shape[1])),
    )
    return DiscreteChannel(
        matrix=w_kept[:, kept_outputs],
        input=InputDistribution(px[kept_inputs]),
        pruning=report,
    )


def load_channel(text: str) -> DiscreteChannel:
    """Parse and validate a channel JSON document.

    Args:
        text: UTF-8 JSON document in the channel schema

    Returns:
        Validated, pruned DiscreteChannel

    Raises:
        ValueError: On malformed JSON, schema violations or invalid probabilities
    """
    t0 = time.perf_counter()
    try:
        document = ChannelDocument.model_validate_json(text)
    except ValidationError as e:
        raise ValueError(f"invalid channel document: {e.errors()[0]['msg']}") from e
    channel = channel_from_arrays(document.input, document.matrix)
    report = channel.pruning
    if report is not None and report.pruned:
        log_computation(
            "load_channel",
            {"shape": list(report.original_shape)},
            {
                "kept_inputs": list(report.kept_inputs),
                "kept_outputs": list(report.kept_outputs),
            },
            duration_seconds=time.perf_counter() - t0,
        )
    return channel


def dump_channel(ch: DiscreteChannel) -> str:
    """Serialize a channel to the JSON document schema."""
    return json.dumps({"input": ch.input.probs.tolist(), "matrix": ch.matrix.tolist()})


def binary_symmetric_channel(p: float) -> DiscreteChannel:
    """BSC(p) with uniform input."""
    return channel_from_arrays([0.5, 0.5], [[1 - p, p], [p, 1 - p]])


def binary_erasure_channel(e: float) -> DiscreteChannel:
    """BEC(e) with uniform input; outputs ordered (0, erasure, 1)."""
    return channel_from_arrays([0.5, 0.5], [[1 - e, e, 0.0], [0.0, e, 1 - e]])


def q_ary_erasure_channel(q: int, e: float) -> DiscreteChannel:
    """q-ary erasure channel with uniform input; the erasure symbol is the last output."""
    if q < 2:
        raise ValueError("q must be at least 2")
    matrix = np.zeros((q, q + 1))
    matrix[np.arange(q), np.arange(q)] = 1 - e
    matrix[:, q] = e
    return channel_from_arrays(np.full(q, 1.0 / q), matrix)
