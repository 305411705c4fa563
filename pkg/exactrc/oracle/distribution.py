"""Distributions of a random competitor's log-likelihood ratio against a sent sequence.

For a sent pair (xⁿ, yⁿ) and a competitor X′ⁿ ~ P_Xⁿ, the sum Σᵢ ν(xᵢ, yᵢ, X′ᵢ) depends
on (xⁿ, yⁿ) only through its joint type. Atoms whose single-symbol increment laws
coincide are merged into groups, and the law of the sum for a type is the convolution of
the groups' convolution powers.
"""

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from ..channel import DiscreteChannel, NuTable
from ..classify import classify_channel
from ..config import get_settings

# ν/span within this many lattice steps of an integer is treated as on the grid.
SNAP_TOL = 1e-9

# Stored masses are renormalized by a power of two once the largest drops below this.
RESCALE_BELOW = 2.0**-500

LN2 = math.log(2.0)


class Rounding(str, Enum):
    """How a finite ν value is mapped onto a lattice index."""

    NEAREST = "nearest"
    FLOOR = "floor"
    CEIL = "ceil"


@dataclass(frozen=True)
class PairType:
    """Joint type of a sequence pair: one count per support atom."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise ValueError("type counts must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_atom_indices(cls, indices, num_atoms: int) -> "PairType":
        counts = np.bincount(np.asarray(indices, dtype=np.int64), minlength=num_atoms)
        return cls(tuple(int(c) for c in counts))


def _rescale(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Scale by a power of two when the largest entry drops below RESCALE_BELOW."""
    top = float(values.max()) if values.size else 0.0
    if top == 0.0 or top >= RESCALE_BELOW:
        return values, 0
    _, exponent = math.frexp(top)
    return np.ldexp(values, -exponent), exponent


def _log_scaled(mass: float, scale_exp: int) -> float:
    return math.log(mass) + scale_exp * LN2 if mass > 0 else -math.inf


@dataclass(frozen=True)
class LatticeDist:
    """Law of a sum on span·ℤ, with the mass that reached −∞ kept apart.

    The probability of lattice index ``min_index + k`` is ``probs[k]·2^scale_exp``.
    """

    span: float
    min_index: int
    probs: np.ndarray
    minus_inf_mass: float
    scale_exp: int = 0

    @classmethod
    def identity(cls, span: float) -> "LatticeDist":
        return cls(span=span, min_index=0, probs=np.ones(1), minus_inf_mass=0.0)

    def _zero_mass(self) -> float:
        k = -self.min_index
        return float(self.probs[k]) if 0 <= k < self.probs.size else 0.0

    def _plus_mass(self) -> float:
        start = max(0, 1 - self.min_index)
        return float(self.probs[start:].sum()) if start < self.probs.size else 0.0

    @property
    def p_zero(self) -> float:
        return math.ldexp(self._zero_mass(), self.scale_exp)

    @property
    def p_plus(self) -> float:
        return math.ldexp(self._plus_mass(), self.scale_exp)

    @property
    def log_p_zero(self) -> float:
        return _log_scaled(self._zero_mass(), self.scale_exp)

    @property
    def log_p_plus(self) -> float:
        return _log_scaled(self._plus_mass(), self.scale_exp)

    def convolve(self, other: "LatticeDist") -> "LatticeDist":
        cells = self.probs.size + other.probs.size - 1
        cap = get_settings().max_cells
        if cells > cap:
            raise RuntimeError(f"lattice range of {cells} cells exceeds the cap of {cap}")
        probs, shift = _rescale(np.convolve(self.probs, other.probs))
        return LatticeDist(
            span=self.span,
            min_index=self.min_index + other.min_index,
            probs=probs,
            minus_inf_mass=self.minus_inf_mass
            + other.minus_inf_mass
            - self.minus_inf_mass * other.minus_inf_mass,
            scale_exp=self.scale_exp + other.scale_exp + shift,
        )


@dataclass(frozen=True)
class RatioDist:
    """Law of a likelihood-ratio product with exact rational support points.

    ``masses`` maps each positive ratio to its probability over ``2^scale_exp``;
    ``zero_mass`` is the probability that the competitor has zero likelihood.
    """

    masses: dict[Fraction, float]
    zero_mass: float
    scale_exp: int = 0

    @classmethod
    def identity(cls) -> "RatioDist":
        return cls(masses={Fraction(1): 1.0}, zero_mass=0.0)

    def _zero_mass(self) -> float:
        return self.masses.get(Fraction(1), 0.0)

    def _plus_mass(self) -> float:
        return math.fsum(p for r, p in self.masses.items() if r > 1)

    @property
    def p_zero(self) -> float:
        return math.ldexp(self._zero_mass(), self.scale_exp)

    @property
    def p_plus(self) -> float:
        return math.ldexp(self._plus_mass(), self.scale_exp)

    @property
    def log_p_zero(self) -> float:
        return _log_scaled(self._zero_mass(), self.scale_exp)

    @property
    def log_p_plus(self) -> float:
        return _log_scaled(self._plus_mass(), self.scale_exp)

    def convolve(self, other: "RatioDist") -> "RatioDist":
        out: dict[Fraction, float] = {}
        for r1, p1 in self.masses.items():
            for r2, p2 in other.masses.items():
                r = r1 * r2
                out[r] = out.get(r, 0.0) + p1 * p2
        cap = get_settings().max_support
        if len(out) > cap:
            raise RuntimeError(f"ratio support of {len(out)} points exceeds the cap of {cap}")
        shift = 0
        top = max(out.values(), default=0.0)
        if 0.0 < top < RESCALE_BELOW:
            _, shift = math.frexp(top)
            out = {r: math.ldexp(p, -shift) for r, p in out.items()}
        return RatioDist(
            masses=out,
            zero_mass=self.zero_mass + other.zero_mass - self.zero_mass * other.zero_mass,
            scale_exp=self.scale_exp + other.scale_exp + shift,
        )


def _lattice_index(value: float, span: float, rounding: Rounding) -> int:
    k = value / span
    nearest = round(k)
    if rounding is Rounding.NEAREST or abs(k - nearest) <= SNAP_TOL * max(1.0, abs(k)):
        return int(nearest)
    return int(math.floor(k) if rounding is Rounding.FLOOR else math.ceil(k))


def lattice_increments(
    nt: NuTable, ch: DiscreteChannel, span: float, rounding: Rounding = Rounding.NEAREST
) -> list[LatticeDist]:
    """Single-symbol law of ν(x, y, X′) on span·ℤ for every support atom."""
    px = ch.input.probs
    out = []
    for x, y in nt.atoms():
        masses: dict[int, float] = {}
        minus_inf = 0.0
        for xp, nu in enumerate(nt.nu[x, y]):
            if np.isfinite(nu):
                k = _lattice_index(float(nu), span, rounding)
                masses[k] = masses.get(k, 0.0) + float(px[xp])
            else:
                minus_inf += float(px[xp])
        lo, hi = min(masses), max(masses)
        probs = np.zeros(hi - lo + 1)
        for k, p in masses.items():
            probs[k - lo] = p
        out.append(LatticeDist(span=span, min_index=lo, probs=probs, minus_inf_mass=minus_inf))
    return out


def ratio_increments(nt: NuTable, ch: DiscreteChannel) -> list[RatioDist]:
    """Single-symbol law of W(y|X′)/W(y|x) in exact rationals for every support atom."""
    px = ch.input.probs
    w = ch.matrix
    out = []
    for x, y in nt.atoms():
        sent = Fraction(float(w[x, y]))
        masses: dict[Fraction, float] = {}
        zero = 0.0
        for xp in range(ch.num_inputs):
            if w[xp, y] > 0:
                r = Fraction(float(w[xp, y])) / sent
                masses[r] = masses.get(r, 0.0) + float(px[xp])
            else:
                zero += float(px[xp])
        out.append(RatioDist(masses=masses, zero_mass=zero))
    return out


def _increment_key(inc: LatticeDist | RatioDist) -> tuple:
    if isinstance(inc, LatticeDist):
        return (inc.min_index, tuple(inc.probs.tolist()), inc.minus_inf_mass)
    return (tuple(sorted(inc.masses.items())), inc.zero_mass)


class AtomGroups:
    """Support atoms merged by identical increment law, with cached convolution powers.

    ``probs[g]`` is the total joint probability of the atoms in group ``g``. Only the
    squares inc^(2^j) are cached; other powers are products of ladder rungs. The ladder
    is shared across threads and convolutions run outside the lock.
    """

    def __init__(self, increments: list, joint_probs: np.ndarray, identity):
        keys: dict[tuple, int] = {}
        self.group_of_atom = np.empty(len(increments), dtype=np.int64)
        self.increments: list = []
        probs: list[float] = []
        for a, inc in enumerate(increments):
            key = _increment_key(inc)
            if key not in keys:
                keys[key] = len(self.increments)
                self.increments.append(inc)
                probs.append(0.0)
            g = keys[key]
            self.group_of_atom[a] = g
            probs[g] += float(joint_probs[a])
        self.probs = np.array(probs)
        self._identity = identity
        self._ladders: list[list] = [[inc] for inc in self.increments]
        self._lock = threading.Lock()

    @property
    def size(self) -> int:
        return len(self.increments)

    @property
    def identity(self):
        return self._identity

    def ladder_length(self, g: int) -> int:
        with self._lock:
            return len(self._ladders[g])

    def _rung(self, g: int, j: int):
        """inc^(2^j) for group ``g``."""
        while True:
            with self._lock:
                ladder = self._ladders[g]
                if j < len(ladder):
                    return ladder[j]
                top, size = ladder[-1], len(ladder)
            square = top.convolve(top)
            with self._lock:
                if len(ladder) == size:
                    ladder.append(square)

    def power(self, g: int, k: int):
        """k-fold convolution of group ``g``'s increment law."""
        if k < 0:
            raise ValueError(f"power must be nonnegative, got {k}")
        dist = self._identity
        j = 0
        while k:
            if k & 1:
                dist = dist.convolve(self._rung(g, j))
            k >>= 1
            j += 1
        return dist

    def group_counts(self, t: PairType) -> tuple[int, ...]:
        counts = [0] * self.size
        for a, c in enumerate(t.counts):
            counts[self.group_of_atom[a]] += c
        return tuple(counts)

    def for_counts(self, counts: tuple[int, ...]):
        """Law of the sum for a type given by its per-group counts."""
        dist = self._identity
        for g, c in enumerate(counts):
            if c:
                dist = dist.convolve(self.power(g, c))
        return dist


def _atom_probs(nt: NuTable, ch: DiscreteChannel) -> np.ndarray:
    joint = ch.joint
    return np.array([joint[x, y] for x, y in nt.atoms()])


def lattice_groups(
    nt: NuTable,
    ch: DiscreteChannel,
    grid: float | None = None,
    rounding: Rounding = Rounding.FLOOR,
) -> AtomGroups:
    """Groups for the lattice sum of ν.

    Lattice and singular channels use their own span exactly and ignore ``grid``.
    Nonlattice channels need ``grid`` and round each finite ν down or up onto it.
    """
    cc = classify_channel(nt, ch)
    if cc.singular:
        span, rounding = 1.0, Rounding.NEAREST
    elif cc.nu_span > 0:
        span, rounding = cc.nu_span, Rounding.NEAREST
    elif grid is None or not grid > 0:
        raise ValueError("nonlattice log-likelihood ratios need a positive grid")
    else:
        span = float(grid)
    return AtomGroups(
        lattice_increments(nt, ch, span, rounding),
        _atom_probs(nt, ch),
        LatticeDist.identity(span),
    )


def ratio_groups(nt: NuTable, ch: DiscreteChannel) -> AtomGroups:
    """Groups for the exact rational likelihood-ratio product."""
    return AtomGroups(ratio_increments(nt, ch), _atom_probs(nt, ch), RatioDist.identity())


def sum_distribution(
    nt: NuTable,
    ch: DiscreteChannel,
    t: PairType,
    grid: float | None = None,
    rounding: Rounding = Rounding.FLOOR,
) -> LatticeDist:
    """Law of Σᵢ ν(xᵢ, yᵢ, X′ᵢ) for a sent pair of joint type ``t``.

    Args:
        nt: ν table of ``ch``
        ch: A validated channel
        t: Joint type over the support atoms of ``nt``
        grid: Grid span for nonlattice channels (ignored otherwise)
        rounding: Directional rounding onto ``grid``

    Returns:
        LatticeDist

    Raises:
        ValueError: If the channel is nonlattice and no grid is given
        RuntimeError: If the lattice range exceeds the configured cap
    """
    groups = lattice_groups(nt, ch, grid, rounding)
    if len(t.counts) != len(groups.group_of_atom):
        raise ValueError(f"type has {len(t.counts)} counts for {len(groups.group_of_atom)} atoms")
    return groups.for_counts(groups.group_counts(t))


def ratio_distribution(nt: NuTable, ch: DiscreteChannel, t: PairType) -> RatioDist:
    """Exact law of Πᵢ W(yᵢ|X′ᵢ)/W(yᵢ|xᵢ) for a sent pair of joint type ``t``."""
    groups = ratio_groups(nt, ch)
    if len(t.counts) != len(groups.group_of_atom):
        raise ValueError(f"type has {len(t.counts)} counts for {len(groups.group_of_atom)} atoms")
    return groups.for_counts(groups.group_counts(t))
