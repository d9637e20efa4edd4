"""Weighted-Hamming metric codes for parallel q-ary symmetric channels."""

from whmetric.balls import ball_size, lambda_set, sphere_size
from whmetric.bounds import (
    bounds_table,
    gv_bound,
    hamming_bound,
    krawtchouk,
    lp_bound,
    macwilliams_transform,
    mds_wh_distance,
    plotkin_bound,
    singleton_bound,
)
from whmetric.channel import ChannelSpec, coverage_check, ml_decode, simulate, wh_decode
from whmetric.code import (
    LinearCode,
    code_from_generator,
    code_from_parity_check,
    min_wh_distance,
    random_code,
    t_weight_enumerator,
    tau,
    tau_oracle,
)
from whmetric.constructions import construction1, construction1_decode, reed_solomon
from whmetric.field import Field
from whmetric.metric import BlockStructure, optimal_scalings, t_weight, wh_distance, wh_weight

__version__ = "0.1.0"
