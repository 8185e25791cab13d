from ._core import (
    DataError,
    Instance,
    NumericError,
    bilinear,
    huber,
    identity,
    least_squares,
    list_schemes,
    rate_fit,
    run,
    run_config,
    verify,
)

__all__ = [
    "DataError",
    "Instance",
    "NumericError",
    "bilinear",
    "huber",
    "identity",
    "least_squares",
    "list_schemes",
    "rate_fit",
    "run",
    "run_config",
    "verify",
]
