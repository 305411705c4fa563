"""Classification module for exactrc."""

from .classify import ChannelClass, PairClass, classify_channel, classify_pair
from .lattice import LatticeFit, fit_lattice, real_lattice_span

__all__ = [
    "ChannelClass",
    "LatticeFit",
    "PairClass",
    "classify_channel",
    "classify_pair",
    "fit_lattice",
    "real_lattice_span",
]
