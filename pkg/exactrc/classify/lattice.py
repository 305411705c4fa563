"""Lattice detection for finite sets of real numbers."""

import math
from dataclasses import dataclass

import numpy as np

# Accepted spans reproduce every offset to this fraction of the span.
RESIDUE_FRACTION = 1e-7


@dataclass(frozen=True)
class LatticeFit:
    """Outcome of fitting a common span to a set of values.

    ``span`` is the refined candidate (0 when the gcd collapsed) and ``max_residue``
    the largest distance from an offset to its nearest multiple of ``span``.
    """

    span: float
    max_residue: float
    accepted: bool
    num_values: int


def _real_gcd(a: float, err_a: float, b: float, err_b: float) -> tuple[float, float]:
    """Euclid on two uncertain reals; a remainder within its error bound counts as zero."""
    if a < b:
        a, b, err_a, err_b = b, a, err_b, err_a
    while b > err_b:
        q = math.floor(a / b)
        r = a - q * b
        err_r = err_a + q * err_b
        if r <= err_r or b - r <= err_r + err_b:
            return b, err_b
        a, err_a, b, err_b = b, err_b, r, err_r
    return a, err_a


def _distinct(values: np.ndarray, cutoff: float) -> np.ndarray:
    v = np.sort(values)
    keep = np.concatenate(([True], np.diff(v) > cutoff))
    return v[keep]


def fit_lattice(values, tol: float) -> LatticeFit:
    """Fit the largest span h with every pairwise difference a multiple of h.

    The candidate comes from a real Euclid gcd over consecutive distinct differences,
    is refined by least squares against the integer multiples it implies, and is
    accepted only when every residue is below ``RESIDUE_FRACTION`` of the span.

    Args:
        values: Finite reals
        tol: Relative tolerance; absolute cutoff is tol·max(1, max|value|)

    Returns:
        LatticeFit
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValueError("lattice detection needs a nonempty set of finite values")
    cutoff = tol * max(1.0, float(np.max(np.abs(v))))
    v = _distinct(v, cutoff)
    if v.size < 2:
        return LatticeFit(span=0.0, max_residue=0.0, accepted=False, num_values=int(v.size))

    diffs = np.diff(v)
    g, err = float(diffs[0]), cutoff
    for d in diffs[1:]:
        g, err = _real_gcd(g, err, float(d), cutoff)
    if g <= cutoff:
        return LatticeFit(span=0.0, max_residue=math.inf, accepted=False, num_values=int(v.size))

    offsets = v - v[0]
    k = np.rint(offsets / g)
    # Rounding can leave a common factor in the multiples; fold it into the span.
    common = int(np.gcd.reduce(k.astype(np.int64)))
    if common > 1:
        k = k / common
    g = float(np.dot(k, offsets) / np.dot(k, k))
    max_residue = float(np.max(np.abs(offsets - k * g)))
    return LatticeFit(
        span=g,
        max_residue=max_residue,
        accepted=max_residue < RESIDUE_FRACTION * g,
        num_values=int(v.size),
    )


def real_lattice_span(values, tol: float) -> float | None:
    """Largest span of the lattice generated by pairwise differences, or None if nonlattice."""
    fit = fit_lattice(values, tol)
    return fit.span if fit.accepted else None
