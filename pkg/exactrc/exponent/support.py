"""The random variable Z(λ) and its derivatives over the (x, y) atoms of a channel."""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..channel import DiscreteChannel, NuTable, nu_table


@dataclass(frozen=True)
class ZSupport:
    """Support of (Z(λ), Z′(λ), Z″(λ)) at λ = ``eta``.

    One atom per (x, y) with positive joint probability; arrays are aligned with
    ``atoms``.
    """

    z0: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    p: np.ndarray
    eta: float
    atoms: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return int(self.p.size)


def z_support(ch: DiscreteChannel, lam: float, nt: NuTable | None = None) -> ZSupport:
    """Evaluate Z(λ), Z′(λ), Z″(λ) on every atom.

    For atom (x, y): z0 = log Σ_x′ P(x′)e^{λν}, z1 and z2 are the mean and variance of
    ν under the λ-tilted competitor law. Competitors with ν = −∞ carry no weight.

    Args:
        ch: A validated channel
        lam: Tilt parameter in (0, 1]
        nt: Optional precomputed ν table

    Returns:
        ZSupport at ``eta = lam``
    """
    if not 0 < lam <= 1:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    nt = nt if nt is not None else nu_table(ch)
    atoms = nt.atoms()
    xs = np.array([a[0] for a in atoms])
    ys = np.array([a[1] for a in atoms])
    rows = nt.nu[xs, ys, :]  # atoms × competitors
    finite = np.isfinite(rows)
    px = np.broadcast_to(ch.input.probs, rows.shape)

    scaled = np.where(finite, lam * np.where(finite, rows, 0.0), -np.inf)
    z0 = logsumexp(scaled, b=px, axis=1)
    weights = px * np.exp(scaled - z0[:, None])
    nu_f = np.where(finite, rows, 0.0)
    z1 = np.sum(weights * nu_f, axis=1)
    z2 = np.sum(weights * (nu_f - z1[:, None]) ** 2 * finite, axis=1)
    p = ch.joint[xs, ys]
    return ZSupport(z0=z0, z1=z1, z2=z2, p=p, eta=float(lam), atoms=tuple(atoms))


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")


def log_mgf(ch: DiscreteChannel, alpha: float, nt: NuTable | None = None) -> float:
    """L(α) = log E[e^{αZ(1/(1+α))}].

    Args:
        ch: A validated channel
        alpha: Outer exponent parameter in (0, 1]
        nt: Optional precomputed ν table

    Returns:
        L(α) in nats
    """
    _check_alpha(alpha)
    zs = z_support(ch, 1.0 / (1.0 + alpha), nt)
    return float(logsumexp(alpha * zs.z0, b=zs.p))


def log_mgf_derivative(ch: DiscreteChannel, alpha: float, nt: NuTable | None = None) -> float:
    """L′(α) by the chain rule through λ = 1/(1+α).

    L′(α) = E_α[z0] − α/(1+α)²·E_α[z1] where E_α reweights atoms by e^{αz0}. The
    second term vanishes because λ = 1/(1+α) minimizes the inner problem.
    """
    _check_alpha(alpha)
    zs = z_support(ch, 1.0 / (1.0 + alpha), nt)
    log_w = np.log(zs.p) + alpha * zs.z0
    w = np.exp(log_w - logsumexp(log_w))
    return float(np.dot(w, zs.z0) - alpha / (1.0 + alpha) ** 2 * np.dot(w, zs.z1))
