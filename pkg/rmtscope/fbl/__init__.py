from .normal_approx import (
    FblChannel,
    awgn_channel,
    blocklength_for_rate,
    log_blocklength_grid,
    normal_approx_rate,
    q_function,
    q_inverse,
    rate_table,
)
