"""Tilted-measure module for exactrc."""

from .tilt import TiltedSampler, TiltedStats, tilted_sampler, tilted_stats

__all__ = ["TiltedSampler", "TiltedStats", "tilted_sampler", "tilted_stats"]
