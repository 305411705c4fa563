"""Discrete memoryless channels, input distributions and the log-likelihood-ratio table."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

# Distinguished value of an ExtendedReal: the competitor has zero likelihood.
NEG_INFINITY = -math.inf

# Tolerance on row/input sums accepted from documents; stored arrays are renormalized.
SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class InputDistribution:
    """Probability of each input symbol; every entry strictly positive."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("input distribution must be a nonempty vector")
        if np.any(probs <= 0):
            raise ValueError("input distribution entries must be strictly positive")
        if abs(probs.sum() - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"input distribution sums to {probs.sum():.12g}")
        probs = probs / probs.sum()
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return int(self.probs.size)


@dataclass(frozen=True)
class PruneReport:
    """Original indices kept when a document was loaded."""

    kept_inputs: tuple[int, ...]
    kept_outputs: tuple[int, ...]
    original_shape: tuple[int, int]

    @property
    def pruned(self) -> bool:
        return (len(self.kept_inputs), len(self.kept_outputs)) != self.original_shape


@dataclass(frozen=True)
class DiscreteChannel:
    """Transition matrix W(y|x) paired with the input distribution P_X.

    Rows are indexed by input symbols and columns by output symbols. Instances are
    immutable; the arrays are flagged read-only.
    """

    matrix: np.ndarray
    input: InputDistribution
    pruning: PruneReport | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise ValueError("channel matrix must be a nonempty 2-D array")
        if matrix.shape[0] != self.input.size:
            raise ValueError(
                f"matrix has {matrix.shape[0]} rows but the input distribution has "
                f"{self.input.size} entries"
            )
        if np.any(matrix < 0) or np.any(matrix > 1):
            raise ValueError("channel entries must lie in [0, 1]")
        sums = matrix.sum(axis=1)
        for x, total in enumerate(sums):
            if abs(total - 1.0) > SUM_TOLERANCE:
                raise ValueError(f"row {x} sums to {total:.12g}")
        if np.any(matrix.max(axis=0) <= 0):
            raise ValueError("every output column needs a positive entry")
        matrix = matrix / sums[:, None]
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def num_inputs(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def num_outputs(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def joint(self) -> np.ndarray:
        """P_X(x)·W(y|x) as an |X|×|Y| array."""
        return self.input.probs[:, None] * self.matrix

    @property
    def support(self) -> np.ndarray:
        """Boolean mask of the (x, y) pairs with positive joint probability."""
        return self.joint > 0


@dataclass(frozen=True)
class NuTable:
    """ν(x, y, x′) = log W(y|x′)/W(y|x) for every supported (x, y) and every x′.

    ``nu`` has shape (|X|, |Y|, |X|). Cells with W(y|x) = 0 are outside the support
    and hold NaN; ``support`` marks the defined rows.
    """

    nu: np.ndarray
    support: np.ndarray

    def atoms(self) -> list[tuple[int, int]]:
        """Supported (x, y) pairs in row-major order."""
        xs, ys = np.nonzero(self.support)
        return list(zip(xs.tolist(), ys.tolist(), strict=True))

    def finite_values(self) -> np.ndarray:
        """All finite ν values over the support, flattened."""
        rows = self.nu[self.support]
        return rows[np.isfinite(rows)]


def nu_table(ch: DiscreteChannel) -> NuTable:
    """Compute the log-likelihood-ratio table of a channel.

    Args:
        ch: A validated channel

    Returns:
        NuTable with NEG_INFINITY wherever W(y|x′) = 0
    """
    w = ch.matrix
    support = ch.support
    with np.errstate(divide="ignore", invalid="ignore"):
        log_w = np.log(w)  # |X|×|Y|, -inf where W(y|x) = 0
        # nu[x, y, x'] = log W(y|x') - log W(y|x)
        nu = log_w.T[None, :, :] - log_w[:, :, None]
    nu = np.where(support[:, :, None], nu, np.nan)
    idx = np.arange(ch.num_inputs)
    nu[idx, :, idx] = np.where(support, 0.0, np.nan)
    nu.setflags(write=False)
    return NuTable(nu=nu, support=support)


def mutual_information(ch: DiscreteChannel, nt: NuTable | None = None) -> float:
    """I(X;Y) = E_XY[−log E_X′ e^{ν(X,Y,X′)}] in nats.

    Args:
        ch: A validated channel
        nt: Optional precomputed ν table

    Returns:
        Mutual information in nats
    """
    nt = nt if nt is not None else nu_table(ch)
    joint = ch.joint
    px = ch.input.probs
    total = []
    weights = []
    for x, y in nt.atoms():
        row = nt.nu[x, y]
        finite = np.isfinite(row)
        total.append(-logsumexp(row[finite], b=px[finite]))
        weights.append(joint[x, y])
    return float(np.dot(weights, total))
