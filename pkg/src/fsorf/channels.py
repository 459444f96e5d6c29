"""Channel models for the two links of the hybrid system.

The optical link sees Negative Exponential irradiance fluctuations
(saturated-turbulence regime): the per-branch irradiance I has density
lam * exp(-lam * z), mean 1/lam and variance 1/lam^2.  The radio link is
Rayleigh faded, so the per-branch instantaneous SNR is exponentially
distributed with mean avg_snr; branches are sampled directly at the SNR
level since that is the form all downstream expressions use.

All parameters are stored in linear scale.  dB conversion happens only at
the CLI boundary.  Parameter objects are immutable and safe to share
between threads; samplers take an explicit numpy Generator so each worker
owns its own stream.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FsoParams:
    """Optical-link parameters.

    lam      : rate of the Negative Exponential irradiance law (> 0).
    avg_snr  : average electrical SNR at the combiner input, linear scale.
               This folds together conversion efficiency, transmit energy
               and noise variance, so none of those appear separately.
    """

    lam: float
    avg_snr: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError("lam must be positive, got %r" % (self.lam,))
        if not self.avg_snr > 0.0:
            raise ValueError("avg_snr must be positive, got %r" % (self.avg_snr,))


@dataclass(frozen=True)
class RfParams:
    """Radio-link parameters.

    avg_snr : mean of each branch's exponentially distributed SNR, linear
              scale.  The Rayleigh amplitude scale is absorbed into it.
    """

    avg_snr: float

    def __post_init__(self):
        if not self.avg_snr > 0.0:
            raise ValueError("avg_snr must be positive, got %r" % (self.avg_snr,))


@dataclass(frozen=True)
class SystemConfig:
    """Full system description: branch count, threshold and both links.

    Both links use the same number of receive branches m.  gamma_th is the
    linear-scale outage threshold; gamma_th == 0 is accepted as a documented
    degenerate input for which every outage probability is exactly 0.
    """

    m: int
    gamma_th: float
    fso: FsoParams
    rf: RfParams

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and self.m >= 1):
            raise ValueError("m must be an integer >= 1, got %r" % (self.m,))
        if not self.gamma_th >= 0.0:
            raise ValueError("gamma_th must be >= 0, got %r" % (self.gamma_th,))


def sample_irradiance(params: FsoParams, rng: np.random.Generator, size=None):
    """Draw irradiance values by inverse CDF: -ln(u)/lam, u uniform on (0,1].

    Uniform draws are mapped to (0,1] so the log is always finite.
    """
    u = 1.0 - rng.random(size)
    return -np.log(u) / params.lam


def sample_rayleigh_branch_snr(params: RfParams, rng: np.random.Generator, size=None):
    """Draw per-branch SNR of the Rayleigh-faded radio path.

    The branch SNR is exponential with mean avg_snr, so it is sampled
    directly by inverse CDF rather than through the amplitude.
    """
    u = 1.0 - rng.random(size)
    return -np.log(u) * params.avg_snr


def irradiance_pdf(params: FsoParams, z):
    """Negative Exponential density lam * exp(-lam * z) for z >= 0."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0):
        raise ValueError("irradiance_pdf requires z >= 0")
    out = params.lam * np.exp(-params.lam * z)
    return float(out) if out.ndim == 0 else out
