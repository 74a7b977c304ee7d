"""Finite-blocklength secrecy metrics and secure-transmission simulators."""

from ._core import (
    CipcConfig,
    LobConfig,
    Truncation,
    UnsatisfiableError,
    __version__,
    ber_security_gap,
    block_error_prob,
    bsc_crossover,
    capacity,
    dispersion,
    error_probability,
    max_rate,
    min_blocklength,
    optimize_an_fraction,
    optimize_q,
    post_decoding_ber,
    q_func,
    q_func_inv,
    r_inf,
    r_sup,
    rate_interval,
    run_cipc,
    run_lob,
    sample_rayleigh,
    security_gap,
    steering_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
