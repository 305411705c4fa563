"""Importance-sampled Monte Carlo estimate of P_RC(n) under the tilted measure."""

import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import logsumexp

from ..asymptotics import TieRule
from ..channel import DiscreteChannel, NuTable, nu_table
from ..config import get_settings
from ..exponent import RateAnalysis, z_support
from ..logging import log_computation
from ..tilt import TiltedStats, tilted_sampler
from .distribution import AtomGroups, Rounding, lattice_groups
from .estimate import OracleEstimate, OracleMethod
from .tie import log_q_m

MIN_SAMPLES = 100


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Counter-based generator for one chunk, keyed by (seed, chunk index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))


class _TypeEvaluator:
    """log q_M per group-count tuple, memoized across samples and threads."""

    def __init__(self, groups: AtomGroups, m: int, tie: TieRule):
        self.groups = groups
        self.m = m
        self.tie = tie
        self._cache: dict[tuple[int, ...], float] = {}

    def __call__(self, counts: tuple[int, ...]) -> float:
        log_q = self._cache.get(counts)
        if log_q is None:
            dist = self.groups.for_counts(counts)
            log_q = log_q_m(dist.log_p_plus, dist.log_p_zero, self.m, self.tie)
            self._cache[counts] = log_q
        return log_q


def mc_prc(
    ch: DiscreteChannel,
    ra: RateAnalysis,
    ts: TiltedStats,
    n: int,
    m: int,
    tie: TieRule | str = TieRule.UNIFORM_RANDOM,
    samples: int = 100_000,
    seed: int = 0,
    *,
    grid: float | None = None,
    rho: float | None = None,
    threads: int | None = None,
    nt: NuTable | None = None,
) -> OracleEstimate:
    """Estimate P_RC(n) by drawing sent pairs from the ρ-tilted atom law.

    Each sample draws n atoms i.i.d. from P_ρ, weights them by e^{nΛ(ρ) − ρΣz₀}, and
    scores them with the exact q_M of their joint type. Samples are produced in chunks
    with independent counter-based streams, so the result does not depend on the
    number of threads.

    Args:
        ch: A validated channel
        ra: Solved exponent problem (supplies η and ρ)
        ts: Tilted moments at ``ra.rho``; its Λ(ρ) must match the sampler's
        n: Block length
        m: Codebook size M ≥ 2
        tie: Tie-resolution rule
        samples: Number of samples, at least 100
        seed: Nonnegative seed
        grid: Grid span for nonlattice channels; scores the midpoint of the floor and
            ceil bounds
        rho: Override the tilt; 0 gives plain Monte Carlo
        threads: Worker threads (defaults to settings)
        nt: Optional precomputed ν table

    Returns:
        OracleEstimate with the sample standard error

    Raises:
        ValueError: For fewer than 100 samples, a negative seed, or a nonlattice
            channel without a grid
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    if n < 1:
        raise ValueError(f"block length must be at least 1, got {n}")
    tie = TieRule(tie)
    settings = get_settings()
    threads = threads if threads is not None else settings.threads
    nt = nt if nt is not None else nu_table(ch)
    start = time.perf_counter()

    tilt = ra.rho if rho is None else rho
    zs = z_support(ch, ra.eta, nt)
    sampler = tilted_sampler(zs, tilt)
    if rho is None and not math.isclose(sampler.lambda_rho, ts.lambda_rho, abs_tol=1e-9):
        raise ValueError("tilted stats do not match the solved rate analysis")

    if grid is None:
        evaluators = [_TypeEvaluator(lattice_groups(nt, ch), m, tie)]
    else:
        evaluators = [
            _TypeEvaluator(lattice_groups(nt, ch, grid, rounding), m, tie)
            for rounding in (Rounding.FLOOR, Rounding.CEIL)
        ]

    chunk = settings.mc_chunk
    sizes = [min(chunk, samples - i) for i in range(0, samples, chunk)]

    def run_chunk(index: int) -> tuple[np.ndarray, np.ndarray]:
        rng = chunk_rng(seed, index)
        atoms = sampler.sample(rng, (sizes[index], n))
        log_weights = sampler.log_weights[atoms].sum(axis=1)
        log_scores = np.empty((len(evaluators), sizes[index]))
        for e, evaluator in enumerate(evaluators):
            group_of_atom = evaluator.groups.group_of_atom
            size = evaluator.groups.size
            for i, row in enumerate(group_of_atom[atoms]):
                counts = np.bincount(row, minlength=size)
                log_scores[e, i] = evaluator(tuple(int(c) for c in counts))
        return log_weights, log_scores

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(run_chunk, range(len(sizes))))

    log_weights = np.concatenate([w for w, _ in results])
    log_scores = np.concatenate([s for _, s in results], axis=1)
    log_estimates = log_weights + log_scores
    log_n = math.log(samples)
    # per-sample estimate averaged over the bracket ends
    log_combined = logsumexp(log_estimates, axis=0) - math.log(len(evaluators))
    log_value = float(logsumexp(log_combined)) - log_n
    shift = float(np.max(log_combined))
    if math.isfinite(shift):
        scaled_std = float(np.exp(log_combined - shift).std(ddof=1))
        log_stderr = shift + math.log(scaled_std) - 0.5 * log_n if scaled_std > 0 else -math.inf
    else:
        log_value = log_stderr = -math.inf
    lower = upper = None
    if grid is not None:
        lower, upper = (float(np.exp(logsumexp(row) - log_n)) for row in log_estimates)

    estimate = OracleEstimate(
        value=math.exp(log_value),
        stderr=math.exp(log_stderr),
        method=OracleMethod.MONTE_CARLO_IS,
        n=n,
        m=m,
        tie=tie,
        lower=lower,
        upper=upper,
        weight_mean=float(np.exp(logsumexp(log_weights) - log_n)),
        log_value=log_value,
        log_stderr=log_stderr,
    )
    log_computation(
        "mc_prc",
        {"n": n, "m": m, "tie": tie.value, "samples": samples, "seed": seed, "rho": tilt},
        {"value": estimate.value, "log_value": estimate.log_value, "stderr": estimate.stderr},
        duration_seconds=time.perf_counter() - start,
    )
    return estimate
