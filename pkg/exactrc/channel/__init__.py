"""Channel module for exactrc."""

from .channel import (
    NEG_INFINITY,
    DiscreteChannel,
    InputDistribution,
    NuTable,
    PruneReport,
    mutual_information,
    nu_table,
)
from .loader import (
    ChannelDocument,
    binary_erasure_channel,
    binary_symmetric_channel,
    channel_from_arrays,
    dump_channel,
    load_channel,
    q_ary_erasure_channel,
)

__all__ = [
    "NEG_INFINITY",
    "ChannelDocument",
    "DiscreteChannel",
    "InputDistribution",
    "NuTable",
    "PruneReport",
    "binary_erasure_channel",
    "binary_symmetric_channel",
    "channel_from_arrays",
    "dump_channel",
    "load_channel",
    "mutual_information",
    "nu_table",
    "q_ary_erasure_channel",
]
