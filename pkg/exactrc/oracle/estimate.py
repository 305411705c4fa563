"""Oracle results and the integer codebook size behind a rate."""

import math
from dataclasses import dataclass
from enum import Enum

from ..asymptotics import TieRule

# e^{nR} above this no longer fits a double.
MAX_LOG_CODEBOOK = 700.0


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


class OracleMethod(str, Enum):
    """How an oracle value was obtained."""

    EXACT_TYPES = "exact"
    MONTE_CARLO_IS = "mc"
    BRUTE_FORCE = "brute"


@dataclass(frozen=True)
class OracleEstimate:
    """Ground-truth P_RC(n) for M codewords.

    ``lower``/``upper`` bracket the value in grid mode; ``weight_mean`` is the sample
    mean of the importance weights (≈ 1 when the change of measure is sound).
    ``log_value`` and ``log_stderr`` keep the natural logs, which stay finite after
    ``value`` underflows; they are derived from ``value``/``stderr`` when not given.
    """

    value: float
    stderr: float
    method: OracleMethod
    n: int
    m: int
    tie: TieRule
    lower: float | None = None
    upper: float | None = None
    weight_mean: float | None = None
    log_value: float | None = None
    log_stderr: float | None = None

    def __post_init__(self) -> None:
        if self.stderr < 0:
            raise ValueError(f"stderr must be nonnegative, got {self.stderr}")
        object.__setattr__(self, "value", min(max(self.value, 0.0), 1.0))
        log_value = _log(self.value) if self.log_value is None else min(self.log_value, 0.0)
        object.__setattr__(self, "log_value", log_value)
        if self.log_stderr is None:
            object.__setattr__(self, "log_stderr", _log(self.stderr))

    @property
    def rate(self) -> float:
        """Effective rate log(M)/n in nats."""
        return math.log(self.m) / self.n


def effective_rate(n: int, R: float) -> tuple[int, float]:
    """Codebook size M_n = ⌈e^{nR}⌉ (at least 2) and its rate R_n = log(M_n)/n.

    Raises:
        ValueError: If n < 1, R ≤ 0, or e^{nR} overflows
    """
    if n < 1:
        raise ValueError(f"block length must be at least 1, got {n}")
    if not R > 0:
        raise ValueError(f"rate must be positive, got {R}")
    if n * R > MAX_LOG_CODEBOOK:
        raise ValueError(f"codebook size e^{{nR}} with nR = {n * R:.6g} overflows")
    m = max(2, math.ceil(math.exp(n * R)))
    return m, math.log(m) / n
