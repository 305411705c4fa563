"""Ground-truth oracles for the random-coding error probability."""

from .brute_force import brute_force_prc
from .distribution import (
    AtomGroups,
    LatticeDist,
    PairType,
    RatioDist,
    Rounding,
    lattice_groups,
    ratio_distribution,
    ratio_groups,
    sum_distribution,
)
from .estimate import OracleEstimate, OracleMethod, effective_rate
from .exact import exact_prc
from .monte_carlo import chunk_rng, mc_prc
from .tie import log_q_m, q_m

__all__ = [
    "AtomGroups",
    "LatticeDist",
    "OracleEstimate",
    "OracleMethod",
    "PairType",
    "RatioDist",
    "Rounding",
    "brute_force_prc",
    "chunk_rng",
    "effective_rate",
    "exact_prc",
    "lattice_groups",
    "log_q_m",
    "mc_prc",
    "q_m",
    "ratio_distribution",
    "ratio_groups",
    "sum_distribution",
]
