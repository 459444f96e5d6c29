"""SNR arithmetic of the three combiners.

Equal gain combining on the optical side sums the branch irradiances and
squares, maximal ratio combining on the radio side sums the branch SNRs,
and a selection combiner picks the larger of the two combiner outputs.
Only SNR-level arithmetic is needed; no signal phases or weights are
modeled.  Branch collections are plain arrays of nonnegative reals.
"""

import numpy as np

from .channels import FsoParams


def _as_branches(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("branch set must be a nonempty 1-d sequence")
    if np.any(arr < 0.0):
        raise ValueError("branch values must be nonnegative")
    return arr


def egc_output_snr(irradiances, fso: FsoParams) -> float:
    """Output SNR of the equal gain combiner over M optical branches.

    Returns (avg_snr / M) * (sum of irradiances)^2.  The 1/M factor comes
    from the M-fold summed receiver noise.
    """
    arr = _as_branches(irradiances)
    total = float(arr.sum())
    return (fso.avg_snr / arr.size) * total * total


def mrc_output_snr(branch_snrs) -> float:
    """Output SNR of the maximal ratio combiner: sum of branch SNRs."""
    return float(_as_branches(branch_snrs).sum())


def sc_select(gamma_fso: float, gamma_rf: float) -> float:
    """Selection combiner output: the larger of the two combiner SNRs."""
    if gamma_fso < 0.0 or gamma_rf < 0.0:
        raise ValueError("combiner SNRs must be nonnegative")
    return max(gamma_fso, gamma_rf)


def sc_select_with_link(gamma_fso: float, gamma_rf: float):
    """Diagnostic variant of sc_select: also report which link won.

    Ties are labeled "fso" so the result is deterministic.
    """
    value = sc_select(gamma_fso, gamma_rf)
    return value, ("fso" if gamma_fso >= gamma_rf else "rf")
