"""Structural classification of a channel and of a (channel, rate) pair."""

from dataclasses import dataclass

import numpy as np

from ..channel import DiscreteChannel, NuTable
from ..config import get_settings
from ..exponent import ZSupport
from ..tilt import TiltedStats
from .lattice import real_lattice_span

# ν values within this of zero make the channel singular.
SINGULAR_TOL = 1e-12

# Pseudo-symmetry thresholds: covariance determinant and distance to the fitted line.
DET_TOL = 1e-10
LINE_TOL = 1e-9

# Row and column permutation comparison.
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class ChannelClass:
    """Properties of the channel alone; ``nu_span`` is 0 for nonlattice or singular ν."""

    singular: bool
    nu_span: float
    strongly_symmetric: bool


@dataclass(frozen=True)
class PairClass:
    """Properties of Z(η) at the solved tilt.

    ``z_lattice`` is (h′, a′) with a′ in [0, h′) when Z(η) lives on a′ + h′ℤ.
    """

    z_lattice: tuple[float, float] | None
    pseudo_symmetric: bool

    @property
    def lattice(self) -> bool:
        return self.z_lattice is not None


def _permutations_of_one(rows: np.ndarray) -> bool:
    ordered = np.sort(rows, axis=1)
    return bool(np.all(np.abs(ordered - ordered[0]) <= SYMMETRY_TOL))


def classify_channel(nt: NuTable, ch: DiscreteChannel, tol: float | None = None) -> ChannelClass:
    """Decide singularity, the ν-lattice span and strong symmetry.

    Args:
        nt: ν table of ``ch``
        ch: A validated channel
        tol: Lattice tolerance (defaults to settings)

    Returns:
        ChannelClass
    """
    tol = tol if tol is not None else get_settings().lattice_tol
    values = nt.finite_values()
    singular = bool(np.all(np.abs(values) <= SINGULAR_TOL))
    span = 0.0
    if not singular:
        span = real_lattice_span(values, tol) or 0.0
    symmetric = _permutations_of_one(ch.matrix) and _permutations_of_one(ch.matrix.T)
    return ChannelClass(singular=singular, nu_span=float(span), strongly_symmetric=symmetric)


def _collinear(z0: np.ndarray, z1: np.ndarray) -> bool:
    points = np.column_stack((z0, z1))
    points = np.unique(points, axis=0)
    if points.shape[0] <= 2:
        return True
    centered = points - points.mean(axis=0)
    # Last right-singular vector: normal of the best-fitting line, vertical lines included.
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    distances = np.abs(centered @ vt[-1])
    scale = max(1.0, float(np.max(np.abs(points))))
    return bool(np.max(distances) <= LINE_TOL * scale)


def classify_pair(zs: ZSupport, stats: TiltedStats, tol: float | None = None) -> PairClass:
    """Decide whether Z(η) is lattice and whether (W, R) is pseudo-symmetric.

    Args:
        zs: Z support at the solved η
        stats: Tilted moments at the solved ρ
        tol: Lattice tolerance (defaults to settings)

    Returns:
        PairClass
    """
    tol = tol if tol is not None else get_settings().lattice_tol
    z_lattice = None
    h_prime = real_lattice_span(zs.z0, tol)
    if h_prime is not None:
        a_prime = float(np.mod(np.min(zs.z0), h_prime))
        if a_prime >= h_prime:
            a_prime = 0.0
        z_lattice = (float(h_prime), a_prime)

    det_small = abs(stats.det_sigma) <= DET_TOL * max(1.0, stats.sigma00 * stats.sigma11)
    pseudo = det_small and _collinear(zs.z0, zs.z1)
    return PairClass(z_lattice=z_lattice, pseudo_symmetric=pseudo)
