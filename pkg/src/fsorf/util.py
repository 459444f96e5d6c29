"""Scalar helpers shared across the package."""

import math


def db_to_linear(x_db: float) -> float:
    """Convert a dB quantity to linear scale."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a positive linear quantity to dB."""
    if x <= 0.0:
        raise ValueError("dB conversion requires a positive value, got %r" % (x,))
    return 10.0 * math.log10(x)
