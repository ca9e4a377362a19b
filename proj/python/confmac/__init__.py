"""Rate regions and gap audits for the two-user conferencing MAC."""

from ._core import (
    BoundSet,
    GaussianChannel,
    broadcast_gap,
    capacity_fn,
    cme_max_sum_rate,
    max_sum_rate,
    multiplexing_gain,
    no_coop_bounds,
    one_round_bounds,
    outer_bounds,
    region,
    sigma_min,
    symmetric_gap,
)

__all__ = [
    "BoundSet",
    "GaussianChannel",
    "broadcast_gap",
    "capacity_fn",
    "cme_max_sum_rate",
    "max_sum_rate",
    "multiplexing_gain",
    "no_coop_bounds",
    "one_round_bounds",
    "outer_bounds",
    "region",
    "sigma_min",
    "symmetric_gap",
]
