"""Brute-force P_RC(n) over every codebook, message and channel output."""

import itertools
import time
from fractions import Fraction

import numpy as np

from ..asymptotics import TieRule
from ..channel import DiscreteChannel
from ..config import get_settings
from ..logging import log_computation
from .estimate import OracleEstimate, OracleMethod

MAX_BLOCK_LENGTH = 5
MAX_CODEBOOK = 4


def _error_share(likelihoods: list[Fraction], sent: int, tie: TieRule) -> float:
    mine = likelihoods[sent]
    others = likelihoods[:sent] + likelihoods[sent + 1 :]
    if tie is TieRule.TIE_AS_ERROR:
        return 1.0 if any(other >= mine for other in others) else 0.0
    if any(other > mine for other in others):
        return 1.0
    tied = 1 + sum(1 for other in others if other == mine)
    return 1.0 - 1.0 / tied


def brute_force_prc(
    ch: DiscreteChannel,
    n: int,
    m: int,
    tie: TieRule | str = TieRule.UNIFORM_RANDOM,
) -> OracleEstimate:
    """Average ML error over all codebooks with likelihoods compared in exact rationals.

    Args:
        ch: A validated channel
        n: Block length, 1 ≤ n ≤ 5
        m: Codebook size, 2 ≤ m ≤ 4
        tie: Tie-resolution rule

    Returns:
        OracleEstimate with stderr 0

    Raises:
        ValueError: If n or m is out of range
        RuntimeError: If |X|^{nm}·|Y|^n exceeds the configured cap
    """
    if not 1 <= n <= MAX_BLOCK_LENGTH:
        raise ValueError(f"brute force needs 1 <= n <= {MAX_BLOCK_LENGTH}, got {n}")
    if not 2 <= m <= MAX_CODEBOOK:
        raise ValueError(f"brute force needs 2 <= m <= {MAX_CODEBOOK}, got {m}")
    tie = TieRule(tie)
    size = ch.num_inputs ** (n * m) * ch.num_outputs**n
    cap = get_settings().brute_force_cap
    if size > cap:
        raise RuntimeError(f"brute force over {size} configurations exceeds the cap of {cap}")
    start = time.perf_counter()

    w = ch.matrix
    px = ch.input.probs
    words = list(itertools.product(range(ch.num_inputs), repeat=n))
    outputs = list(itertools.product(range(ch.num_outputs), repeat=n))
    word_prob = [float(np.prod([px[x] for x in word])) for word in words]
    exact_w = [[Fraction(float(v)) for v in row] for row in w]
    likelihood = [
        [_product(exact_w[x][y] for x, y in zip(word, out, strict=True)) for out in outputs]
        for word in words
    ]
    channel_prob = [[float(v) for v in row] for row in likelihood]

    total = 0.0
    for book in itertools.product(range(len(words)), repeat=m):
        book_prob = float(np.prod([word_prob[c] for c in book]))
        for sent in range(m):
            for j in range(len(outputs)):
                p_out = channel_prob[book[sent]][j]
                if p_out == 0:
                    continue
                share = _error_share([likelihood[c][j] for c in book], sent, tie)
                if share:
                    total += book_prob * p_out * share / m

    estimate = OracleEstimate(
        value=total, stderr=0.0, method=OracleMethod.BRUTE_FORCE, n=n, m=m, tie=tie
    )
    log_computation(
        "brute_force_prc",
        {"n": n, "m": m, "tie": tie.value},
        {"value": estimate.value},
        duration_seconds=time.perf_counter() - start,
    )
    return estimate


def _product(factors) -> Fraction:
    result = Fraction(1)
    for f in factors:
        result *= f
    return result
