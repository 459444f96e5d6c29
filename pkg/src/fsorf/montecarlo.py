"""Monte Carlo simulation of the full receive chain.

Each realization draws M irradiances and M radio branch SNRs, forms the
equal-gain and maximal-ratio combiner outputs, applies selection between
them and tests the threshold.  Work is split into shards, one per worker;
shard i draws from an independent stream spawned from (seed, i), so the
estimate is bit-identical for a fixed (seed, workers) pair no matter how
the shards are scheduled.  Counts merge by integer addition.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import WHICH_CODES, WHICH_HYBRID, get_kernels
from .analytic import OutageResult
from .channels import SystemConfig

# uniforms drawn per kernel call, bounding the working-set size
_BLOCK_BUDGET = 4_000_000

_Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class McSettings:
    """Simulation size, seed and parallel shard count."""

    n_samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not (isinstance(self.n_samples, (int, np.integer)) and self.n_samples >= 1):
            raise ValueError("n_samples must be an integer >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit an unsigned 64-bit integer")
        if not (isinstance(self.workers, (int, np.integer)) and self.workers >= 1):
            raise ValueError("workers must be an integer >= 1")


def _shard_sizes(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _shard_streams(mc: McSettings) -> list[np.random.Generator]:
    root = np.random.SeedSequence(mc.seed)
    return [np.random.Generator(np.random.PCG64(s)) for s in root.spawn(mc.workers)]


def _uniform_width(m: int, which_code: int) -> int:
    return 2 * m if which_code == WHICH_HYBRID else m


def _count_shard(rng, n, cfg, which_code, count_kernel):
    k = _uniform_width(cfg.m, which_code)
    block = max(1, _BLOCK_BUDGET // k)
    buf = np.empty(block * k)
    count = 0
    done = 0
    while done < n:
        take = min(block, n - done)
        flat = buf[: take * k]
        rng.random(out=flat)
        count += count_kernel(
            flat.reshape(take, k),
            cfg.m,
            cfg.fso.lam,
            cfg.fso.avg_snr,
            cfg.rf.avg_snr,
            cfg.gamma_th,
            which_code,
        )
        done += take
    return count


def _snr_shard(rng, n, cfg, which_code, snr_kernel):
    k = cfg.m
    block = max(1, _BLOCK_BUDGET // k)
    buf = np.empty(block * k)
    chunks = []
    done = 0
    while done < n:
        take = min(block, n - done)
        flat = buf[: take * k]
        rng.random(out=flat)
        chunks.append(
            snr_kernel(
                flat.reshape(take, k),
                cfg.m,
                cfg.fso.lam,
                cfg.fso.avg_snr,
                cfg.rf.avg_snr,
                which_code,
            )
        )
        done += take
    return np.concatenate(chunks)


def _run_shards(task, streams, sizes, workers):
    if workers == 1:
        return [task(streams[0], sizes[0])]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, rng, n) for rng, n in zip(streams, sizes)]
        return [f.result() for f in futures]


def mc_outage(cfg: SystemConfig, which: str, mc: McSettings) -> OutageResult:
    """Estimate an outage probability by direct channel simulation.

    which selects the quantity: "fso", "rf" or "hybrid" (selection between
    the two combiner outputs).  Returns the outage fraction with a 95%
    normal-approximation confidence halfwidth.  A threshold of exactly 0
    yields probability 0 without sampling, since the combiner outputs are
    continuous positive variates.
    """
    if which not in WHICH_CODES:
        raise ValueError("which must be one of %s" % (sorted(WHICH_CODES),))
    if cfg.gamma_th == 0.0:
        return OutageResult(0.0, "monte_carlo", 0.0)
    code = WHICH_CODES[which]
    count_kernel, _ = get_kernels()
    sizes = _shard_sizes(mc.n_samples, mc.workers)
    streams = _shard_streams(mc)

    def task(rng, n):
        return _count_shard(rng, n, cfg, code, count_kernel)

    counts = _run_shards(task, streams, sizes, mc.workers)
    p_hat = sum(counts) / mc.n_samples
    ci = _Z95 * math.sqrt(p_hat * (1.0 - p_hat) / mc.n_samples)
    return OutageResult(p_hat, "monte_carlo", ci)


@dataclass(frozen=True)
class Histogram:
    """Binned combiner-output SNR samples.

    counts are raw occupancies; fractions sum to 1 when every sample fell
    inside the binned range; density integrates to the same total.
    """

    edges: np.ndarray
    counts: np.ndarray
    n_samples: int

    @property
    def fractions(self) -> np.ndarray:
        return self.counts / self.n_samples

    @property
    def density(self) -> np.ndarray:
        return self.fractions / np.diff(self.edges)


def mc_snr_histogram(cfg: SystemConfig, which: str, mc: McSettings, bins) -> Histogram:
    """Histogram of the combiner-output SNR for one link.

    which must be "fso" or "rf".  bins is either a positive bin count
    (range taken from the samples) or a strictly increasing edge array.
    """
    if which not in ("fso", "rf"):
        raise ValueError("which must be 'fso' or 'rf'")
    if isinstance(bins, (int, np.integer)):
        if bins < 1:
            raise ValueError("bin count must be >= 1")
    else:
        bins = np.asarray(bins, dtype=float)
        if bins.ndim != 1 or bins.size < 2 or np.any(np.diff(bins) <= 0):
            raise ValueError("bin edges must be a strictly increasing 1-d array")
    code = WHICH_CODES[which]
    _, snr_kernel = get_kernels()
    sizes = _shard_sizes(mc.n_samples, mc.workers)
    streams = _shard_streams(mc)

    def task(rng, n):
        return _snr_shard(rng, n, cfg, code, snr_kernel)

    samples = np.concatenate(_run_shards(task, streams, sizes, mc.workers))
    counts, edges = np.histogram(samples, bins=bins)
    return Histogram(edges=edges, counts=counts, n_samples=mc.n_samples)
