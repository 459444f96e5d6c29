"""SNR sweeps, target-SNR solving and the turbulence/diversity gap report.

A sweep evaluates outage probability over a grid of average SNR points
(dB), with both links at the same average SNR, for each requested system,
branch count and turbulence rate.  Closed forms are always computed;
Monte Carlo columns are filled when settings are supplied.  Rows come out
in a fixed nesting order (system, branch count, rate, SNR point) no
matter how the work is scheduled, and the CSV writer emits no
timestamps, so closed-form output is byte-stable.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import __version__
from .analytic import fso_outage, hybrid_outage, rf_outage
from .channels import FsoParams, RfParams, SystemConfig
from .montecarlo import McSettings, mc_outage
from .util import db_to_linear

SYSTEMS = ("hybrid", "fso_only", "rf_only")

_WHICH_BY_SYSTEM = {"hybrid": "hybrid", "fso_only": "fso", "rf_only": "rf"}
_CLOSED_BY_SYSTEM = {
    "hybrid": hybrid_outage,
    "fso_only": fso_outage,
    "rf_only": rf_outage,
}

CSV_COLUMNS = (
    "system",
    "m",
    "lambda",
    "snr_db",
    "pout_closed",
    "pout_mc",
    "mc_ci",
    "n_samples",
)

# expected outage events below this make the normal CI dubious
_RARE_EVENT_FLOOR = 100.0


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition for figure-style sweeps.

    The SNR grid runs from snr_db_start to snr_db_stop inclusive in steps
    of snr_db_step (all dB).  Both link averages are set to each grid
    point.  mc of None means closed-form only.
    """

    snr_db_start: float = 0.0
    snr_db_stop: float = 50.0
    snr_db_step: float = 1.0
    gamma_th_db: float = 10.0
    m_values: tuple = (1,)
    lambda_values: tuple = (1.0,)
    systems: tuple = ("hybrid",)
    mc: Optional[McSettings] = None

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(self.m_values))
        object.__setattr__(self, "lambda_values", tuple(self.lambda_values))
        object.__setattr__(self, "systems", tuple(self.systems))
        if not self.snr_db_step > 0.0:
            raise ValueError("snr_db_step must be positive")
        if self.snr_db_start > self.snr_db_stop:
            raise ValueError("snr_db_start must not exceed snr_db_stop")
        if not self.m_values or any(m < 1 or m != int(m) for m in self.m_values):
            raise ValueError("m_values must be a nonempty list of integers >= 1")
        if not self.lambda_values or any(l <= 0 for l in self.lambda_values):
            raise ValueError("lambda_values must be a nonempty list of positive reals")
        if not self.systems or any(s not in SYSTEMS for s in self.systems):
            raise ValueError("systems must be a nonempty subset of %s" % (SYSTEMS,))

    def snr_db_points(self) -> np.ndarray:
        n = int(math.floor((self.snr_db_stop - self.snr_db_start) / self.snr_db_step + 1e-9))
        return self.snr_db_start + self.snr_db_step * np.arange(n + 1)


@dataclass(frozen=True)
class SweepRow:
    system: str
    m: int
    lam: float
    snr_db: float
    pout_closed: float
    pout_mc: Optional[float] = None
    mc_ci: Optional[float] = None
    n_samples: Optional[int] = None


def make_config(m: int, lam: float, snr_db: float, gamma_th_db: float) -> SystemConfig:
    """Build a SystemConfig with both links at the same average SNR."""
    snr = db_to_linear(snr_db)
    return SystemConfig(
        m=int(m),
        gamma_th=db_to_linear(gamma_th_db),
        fso=FsoParams(lam=lam, avg_snr=snr),
        rf=RfParams(avg_snr=snr),
    )


def run_sweep(spec: SweepSpec, rare_event_warnings: Optional[list] = None) -> list[SweepRow]:
    """Evaluate the sweep grid; one row per (system, m, lambda, SNR point).

    Pass a list as rare_event_warnings to collect notes about Monte Carlo
    points whose expected outage count falls below 100.
    """
    rows = []
    points = spec.snr_db_points()
    row_index = 0
    for system in spec.systems:
        closed_fn = _CLOSED_BY_SYSTEM[system]
        which = _WHICH_BY_SYSTEM[system]
        for m in spec.m_values:
            for lam in spec.lambda_values:
                for snr_db in points:
                    cfg = make_config(m, lam, float(snr_db), spec.gamma_th_db)
                    closed = closed_fn(cfg).probability
                    pout_mc = mc_ci = n_samples = None
                    if spec.mc is not None:
                        row_mc = replace(spec.mc, seed=_row_seed(spec.mc.seed, row_index))
                        expected = closed * spec.mc.n_samples
                        if expected < _RARE_EVENT_FLOOR and rare_event_warnings is not None:
                            rare_event_warnings.append(
                                "%s m=%d lambda=%g snr_db=%g: expected outage events "
                                "%.1f < %g; the MC estimate is unreliable"
                                % (system, m, lam, snr_db, expected, _RARE_EVENT_FLOOR)
                            )
                        est = mc_outage(cfg, which, row_mc)
                        pout_mc = est.probability
                        mc_ci = est.ci_halfwidth
                        n_samples = spec.mc.n_samples
                    rows.append(
                        SweepRow(
                            system=system,
                            m=int(m),
                            lam=float(lam),
                            snr_db=float(snr_db),
                            pout_closed=closed,
                            pout_mc=pout_mc,
                            mc_ci=mc_ci,
                            n_samples=n_samples,
                        )
                    )
                    row_index += 1
    return rows


def _row_seed(seed: int, row_index: int) -> int:
    # independent per-row stream roots, reproducible for a fixed base seed
    return int(np.random.SeedSequence([seed, row_index]).generate_state(1, np.uint64)[0])


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "%.12g" % x
    return str(x)


def sweep_csv_lines(spec: SweepSpec, rows: list[SweepRow]) -> list[str]:
    """Render metadata header plus one CSV line per row."""
    meta = [
        "# fsorf sweep v%s" % __version__,
        "# gamma_th_db = %s" % _fmt(spec.gamma_th_db),
        "# snr_db = %s:%s:%s"
        % (_fmt(spec.snr_db_start), _fmt(spec.snr_db_stop), _fmt(spec.snr_db_step)),
        "# m_values = %s" % ",".join(str(m) for m in spec.m_values),
        "# lambda_values = %s" % ",".join(_fmt(l) for l in spec.lambda_values),
        "# systems = %s" % ",".join(spec.systems),
    ]
    if spec.mc is not None:
        meta += [
            "# mc_samples = %d" % spec.mc.n_samples,
            "# seed = %d" % spec.mc.seed,
            "# workers = %d" % spec.mc.workers,
        ]
    lines = meta + [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.system,
                    str(r.m),
                    _fmt(r.lam),
                    _fmt(r.snr_db),
                    _fmt(r.pout_closed),
                    _fmt(r.pout_mc),
                    _fmt(r.mc_ci),
                    _fmt(r.n_samples),
                ]
            )
        )
    return lines


def find_snr_at_target(
    system: str,
    m: int,
    lam: float,
    gamma_th: float,
    target_pout: float,
    lo_db: float = -20.0,
    hi_db: float = 100.0,
    tol_db: float = 0.01,
) -> float:
    """Average SNR (dB) at which the closed-form outage equals target_pout.

    Bisection on the monotone outage-vs-SNR curve.  Raises if the target
    is not bracketed on [lo_db, hi_db].
    """
    if system not in SYSTEMS:
        raise ValueError("system must be one of %s" % (SYSTEMS,))
    if not 0.0 < target_pout < 1.0:
        raise ValueError("target_pout must lie in (0, 1)")
    closed_fn = _CLOSED_BY_SYSTEM[system]

    def outage_at(snr_db: float) -> float:
        snr = db_to_linear(snr_db)
        cfg = SystemConfig(
            m=int(m),
            gamma_th=gamma_th,
            fso=FsoParams(lam=lam, avg_snr=snr),
            rf=RfParams(avg_snr=snr),
        )
        return closed_fn(cfg).probability

    p_lo = outage_at(lo_db)
    p_hi = outage_at(hi_db)
    if not (p_hi <= target_pout <= p_lo):
        raise ValueError(
            "target %g not reachable on [%g, %g] dB (outage spans [%g, %g])"
            % (target_pout, lo_db, hi_db, p_hi, p_lo)
        )
    lo, hi = lo_db, hi_db
    while hi - lo > tol_db:
        mid = 0.5 * (lo + hi)
        if outage_at(mid) >= target_pout:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ClaimResult:
    label: str
    quoted_gap_db: float
    measured_gap_db: float
    snr_db_a: float
    snr_db_b: float
    agrees: bool


# Published-figure claims this tool re-derives from its own closed forms.
_CLAIM_TOLERANCE_DB = 1.5


def evaluate_claims(gamma_th_db: float = 10.0) -> list[ClaimResult]:
    """Recompute the two quoted dB gaps from the closed forms."""
    gamma_th = db_to_linear(gamma_th_db)

    s1 = find_snr_at_target("hybrid", 1, 1.0, gamma_th, 1e-5)
    s2 = find_snr_at_target("hybrid", 2, 1.0, gamma_th, 1e-5)
    claim1 = ClaimResult(
        label="hybrid, lambda=1, M=1 vs M=2 at outage 1e-5",
        quoted_gap_db=8.0,
        measured_gap_db=s1 - s2,
        snr_db_a=s1,
        snr_db_b=s2,
        agrees=abs((s1 - s2) - 8.0) <= _CLAIM_TOLERANCE_DB,
    )

    sa = find_snr_at_target("hybrid", 2, 0.5, gamma_th, 1e-3)
    sb = find_snr_at_target("hybrid", 2, 1.0, gamma_th, 1e-3)
    claim2 = ClaimResult(
        label="hybrid, M=2, lambda=0.5 vs lambda=1 at outage 1e-3",
        quoted_gap_db=5.0,
        measured_gap_db=sb - sa,
        snr_db_a=sa,
        snr_db_b=sb,
        agrees=abs((sb - sa) - 5.0) <= _CLAIM_TOLERANCE_DB,
    )
    return [claim1, claim2]


def claims_report(spec: Optional[SweepSpec] = None) -> str:
    """Text report comparing measured dB gaps against the quoted ones.

    Only the threshold is taken from the sweep settings; the claim
    parameters themselves are fixed by the published figures.
    Informational only: disagreement is documented, never asserted away.
    """
    gamma_th_db = spec.gamma_th_db if spec is not None else 10.0
    lines = [
        "gap report (gamma_th = %g dB; both links at equal average SNR)" % gamma_th_db,
        "",
    ]
    for i, c in enumerate(evaluate_claims(gamma_th_db), start=1):
        lines.append("claim %d: %s" % (i, c.label))
        lines.append(
            "  solved SNR points: %.2f dB and %.2f dB" % (c.snr_db_a, c.snr_db_b)
        )
        lines.append(
            "  measured gap = %.2f dB, quoted gap = %g dB"
            % (c.measured_gap_db, c.quoted_gap_db)
        )
        if c.agrees:
            lines.append("  agreement within +/-%.1f dB" % _CLAIM_TOLERANCE_DB)
        else:
            lines.append(
                "  documented discrepancy: measured %.2f dB vs quoted %g dB; the"
                % (c.measured_gap_db, c.quoted_gap_db)
            )
            lines.append(
                "  quoted value is not reproduced by these closed forms under the"
            )
            lines.append("  equal-average-SNR reading; both numbers are shown above")
        lines.append("")
    return "\n".join(lines)
