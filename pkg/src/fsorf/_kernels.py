"""Hot inner loops of the Monte Carlo simulator.

Two interchangeable backends: numba-jitted loops (default) and a pure
numpy path.  Both consume the same uniform draws in the same per-sample
order and apply the same arithmetic; results from either backend are
reproducible run to run.  Across backends, per-sample SNR values can
differ by one ulp because numpy's vectorized log1p and libm's (used by
numba) round differently on some inputs; outage counts are unaffected in
practice since a flip needs the SNR to land within an ulp of the
threshold.  The benchmark in benchmarks/bench_kernels.py checks and
times both.

Selection: set FSORF_NUMBA=0 to force the numpy path.  If numba is not
importable the numpy path is used silently.

Kernels take raw uniforms x in [0, 1) and transform via -log1p(-x), which
equals -log(u) for u = 1 - x in (0, 1] and is therefore always finite.
"""

import os

import numpy as np

WHICH_FSO = 0
WHICH_RF = 1
WHICH_HYBRID = 2

WHICH_CODES = {"fso": WHICH_FSO, "rf": WHICH_RF, "hybrid": WHICH_HYBRID}


def _count_outages_loop(u, m, lam, fso_snr, rf_snr, gamma_th, which):
    n = u.shape[0]
    count = 0
    for i in range(n):
        g_fso = 0.0
        g_rf = 0.0
        if which == 0 or which == 2:
            s = 0.0
            for j in range(m):
                s += -np.log1p(-u[i, j]) / lam
            g_fso = (fso_snr / m) * (s * s)
        if which == 1 or which == 2:
            off = m if which == 2 else 0
            t = 0.0
            for j in range(m):
                t += -np.log1p(-u[i, off + j]) * rf_snr
            g_rf = t
        if which == 0:
            g = g_fso
        elif which == 1:
            g = g_rf
        else:
            g = g_fso if g_fso > g_rf else g_rf
        if g <= gamma_th:
            count += 1
    return count


def _combiner_snr_loop(u, m, lam, fso_snr, rf_snr, which):
    n = u.shape[0]
    out = np.empty(n)
    for i in range(n):
        if which == 0:
            s = 0.0
            for j in range(m):
                s += -np.log1p(-u[i, j]) / lam
            out[i] = (fso_snr / m) * (s * s)
        else:
            t = 0.0
            for j in range(m):
                t += -np.log1p(-u[i, j]) * rf_snr
            out[i] = t
    return out


def count_outages_numpy(u, m, lam, fso_snr, rf_snr, gamma_th, which):
    # branch sums accumulate column by column to mirror the loop order
    n = u.shape[0]
    if which == WHICH_FSO or which == WHICH_HYBRID:
        s = np.zeros(n)
        for j in range(m):
            s += -np.log1p(-u[:, j]) / lam
        g_fso = (fso_snr / m) * (s * s)
    if which == WHICH_RF or which == WHICH_HYBRID:
        off = m if which == WHICH_HYBRID else 0
        t = np.zeros(n)
        for j in range(m):
            t += -np.log1p(-u[:, off + j]) * rf_snr
        g_rf = t
    if which == WHICH_FSO:
        g = g_fso
    elif which == WHICH_RF:
        g = g_rf
    else:
        g = np.maximum(g_fso, g_rf)
    return int(np.count_nonzero(g <= gamma_th))


def combiner_snr_numpy(u, m, lam, fso_snr, rf_snr, which):
    n = u.shape[0]
    if which == WHICH_FSO:
        s = np.zeros(n)
        for j in range(m):
            s += -np.log1p(-u[:, j]) / lam
        return (fso_snr / m) * (s * s)
    t = np.zeros(n)
    for j in range(m):
        t += -np.log1p(-u[:, j]) * rf_snr
    return t


def _env_wants_numba() -> bool:
    return os.environ.get("FSORF_NUMBA", "1").strip().lower() not in (
        "0",
        "false",
        "no",
        "off",
    )


_KERNELS = {"numpy": (count_outages_numpy, combiner_snr_numpy)}


def _build_numba_kernels():
    from numba import njit

    jit = njit(cache=True, nogil=True)
    return jit(_count_outages_loop), jit(_combiner_snr_loop)


def get_kernels(backend: str | None = None):
    """Return (count_outages, combiner_snr) for the requested backend.

    backend None resolves to "numba" unless FSORF_NUMBA disables it or
    numba is unavailable, in which case the numpy pair is returned.
    Explicitly requesting "numba" raises if numba cannot be imported.
    """
    if backend is None:
        backend = active_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy', got %r" % (backend,))
    if backend == "numba" and "numba" not in _KERNELS:
        _KERNELS["numba"] = _build_numba_kernels()
    return _KERNELS[backend]


def active_backend() -> str:
    """Name of the backend get_kernels() resolves to by default."""
    if not _env_wants_numba():
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"
