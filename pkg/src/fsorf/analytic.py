"""Closed-form densities and outage probabilities.

The sum of M independent exponential irradiances is Erlang(M, lam); the
equal-gain combiner output SNR is its square-then-scale transform, so the
optical outage probability reduces exactly to

    P_fso(gamma_th) = P(M, lam * sqrt(M * gamma_th / avg_snr_fso))

with P the regularized lower incomplete gamma.  The Meijer-G route to the
same quantity is kept as a second evaluator, and an adaptive-quadrature
evaluator of the SNR-density integral is available as a cross-check.  The
radio side is an Erlang CDF outright.  The hybrid selection combiner fails
only when both links fail, so its outage is the product of the two.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .channels import SystemConfig
from .special import MeijerG2113Args, meijer_g_2113, regularized_lower_gamma

_METHODS = ("closed_form", "quadrature", "monte_carlo")

# Probabilities may stray outside [0,1] by rounding only; anything larger
# than this is an evaluation defect and must surface, not be clamped away.
_CLAMP_SLACK = 1e-9


@dataclass(frozen=True)
class OutageResult:
    """An outage probability plus how it was obtained.

    ci_halfwidth is the 95% confidence halfwidth for Monte Carlo results
    and 0 for the deterministic methods.
    """

    probability: float
    method: str
    ci_halfwidth: float = 0.0

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError("method must be one of %s" % (_METHODS,))
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError("probability must lie in [0, 1]")
        if self.ci_halfwidth < 0.0:
            raise ValueError("ci_halfwidth must be nonnegative")


def _clamp_probability(p: float) -> float:
    if p < -_CLAMP_SLACK or p > 1.0 + _CLAMP_SLACK:
        raise ValueError("probability %r strays outside [0,1] beyond rounding" % (p,))
    return min(1.0, max(0.0, p))


def sum_irradiance_pdf(m: int, lam: float, z) -> float:
    """Erlang(M, lam) density of the summed branch irradiances."""
    if m < 1 or m != int(m):
        raise ValueError("m must be an integer >= 1")
    if not lam > 0.0:
        raise ValueError("lam must be positive")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0):
        raise ValueError("sum_irradiance_pdf requires z >= 0")
    out = lam**m * z ** (m - 1) * np.exp(-lam * z) / math.gamma(m)
    return float(out) if out.ndim == 0 else out


def fso_snr_pdf(cfg: SystemConfig, gamma) -> float:
    """Density of the equal-gain combiner output SNR.

    Square-then-scale transform of the Erlang irradiance-sum density.
    Diverges at 0 for M = 1, so only gamma > 0 is accepted.
    """
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma <= 0.0):
        raise ValueError("fso_snr_pdf requires gamma > 0")
    m = cfg.m
    lam = cfg.fso.lam
    scale = cfg.fso.avg_snr / m
    coeff = lam**m / (2.0 * math.gamma(m) * scale ** (m / 2.0))
    out = coeff * gamma ** (m / 2.0 - 1.0) * np.exp(-lam * np.sqrt(gamma / scale))
    return float(out) if out.ndim == 0 else out


def rf_snr_pdf(cfg: SystemConfig, gamma) -> float:
    """Density of the maximal-ratio combiner output SNR: Erlang(M, 1/avg_snr)."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0.0):
        raise ValueError("rf_snr_pdf requires gamma >= 0")
    m = cfg.m
    gbar = cfg.rf.avg_snr
    out = gamma ** (m - 1) * np.exp(-gamma / gbar) / (gbar**m * math.gamma(m))
    return float(out) if out.ndim == 0 else out


def fso_outage(cfg: SystemConfig) -> OutageResult:
    """Optical-link outage probability, closed form.

    Evaluates P(M, lam * sqrt(M * gamma_th / avg_snr)), verified against
    both the Meijer-G route and adaptive quadrature in the test suite.
    """
    if cfg.gamma_th == 0.0:
        return OutageResult(0.0, "closed_form")
    x = cfg.fso.lam * math.sqrt(cfg.m * cfg.gamma_th / cfg.fso.avg_snr)
    p = regularized_lower_gamma(float(cfg.m), x)
    return OutageResult(_clamp_probability(p), "closed_form")


def fso_outage_meijer_g(cfg: SystemConfig) -> OutageResult:
    """Optical-link outage through the Meijer-G form of the CDF integral."""
    if cfg.gamma_th == 0.0:
        return OutageResult(0.0, "closed_form")
    m = cfg.m
    lam = cfg.fso.lam
    scale = cfg.fso.avg_snr / m
    z = lam**2 * cfg.gamma_th / (4.0 * scale)
    g = meijer_g_2113(MeijerG2113Args(z=z, a1=1.0 - m / 2.0, b3=-m / 2.0))
    coeff = lam**m / (2.0 * math.sqrt(math.pi) * math.gamma(m) * scale ** (m / 2.0))
    p = coeff * cfg.gamma_th ** (m / 2.0) * g
    return OutageResult(_clamp_probability(p), "closed_form")


def fso_outage_quadrature(cfg: SystemConfig) -> OutageResult:
    """Optical-link outage by adaptive quadrature of the SNR density.

    The substitution gamma = u^2 removes the integrable singularity the
    M = 1 density has at the origin.
    """
    if cfg.gamma_th == 0.0:
        return OutageResult(0.0, "quadrature")
    m = cfg.m
    lam = cfg.fso.lam
    scale = cfg.fso.avg_snr / m
    coeff = lam**m / (2.0 * math.gamma(m) * scale ** (m / 2.0))

    def integrand(u):
        return 2.0 * coeff * u ** (m - 1.0) * math.exp(-lam * u / math.sqrt(scale))

    # relative tolerance governs: grid probabilities reach 1e-8 and below,
    # where any fixed absolute tolerance would be too loose
    p, _ = integrate.quad(
        integrand, 0.0, math.sqrt(cfg.gamma_th), epsabs=0.0, epsrel=1e-12, limit=300
    )
    return OutageResult(_clamp_probability(p), "quadrature")


def rf_outage(cfg: SystemConfig) -> OutageResult:
    """Radio-link outage probability, closed form.

    Finite-sum form 1 - e^{-x} * sum_{k=1..M} x^{k-1}/(k-1)! with
    x = gamma_th / avg_snr; identical to the Erlang CDF P(M, x).
    """
    if cfg.gamma_th == 0.0:
        return OutageResult(0.0, "closed_form")
    x = cfg.gamma_th / cfg.rf.avg_snr
    term = 1.0
    total = 1.0
    for k in range(2, cfg.m + 1):
        term *= x / (k - 1)
        total += term
    p = 1.0 - math.exp(-x) * total
    return OutageResult(_clamp_probability(p), "closed_form")


def hybrid_outage(cfg: SystemConfig) -> OutageResult:
    """Hybrid-system outage: product of the two link outages.

    The selection combiner output drops below threshold only when both
    combiner outputs do, and the links fade independently.
    """
    p = fso_outage(cfg).probability * rf_outage(cfg).probability
    return OutageResult(_clamp_probability(p), "closed_form")
