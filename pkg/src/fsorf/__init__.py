"""Outage analysis of a single-hop hybrid FSO/RF link with receive diversity.

Closed-form outage probabilities (incomplete-gamma and Meijer-G routes),
an independent Monte Carlo channel simulator, and sweep tooling that
reproduces the outage-vs-SNR curves as CSV data.
"""

__version__ = "0.1.0"

from .analytic import (
    OutageResult,
    fso_outage,
    fso_outage_meijer_g,
    fso_outage_quadrature,
    fso_snr_pdf,
    hybrid_outage,
    rf_outage,
    rf_snr_pdf,
    sum_irradiance_pdf,
)
from .channels import (
    FsoParams,
    RfParams,
    SystemConfig,
    irradiance_pdf,
    sample_irradiance,
    sample_rayleigh_branch_snr,
)
from .combining import egc_output_snr, mrc_output_snr, sc_select, sc_select_with_link
from .montecarlo import Histogram, McSettings, mc_outage, mc_snr_histogram
from .special import (
    MeijerG2013Args,
    MeijerG2113Args,
    meijer_g_2013,
    meijer_g_2113,
    regularized_lower_gamma,
)
from .sweep import (
    SweepRow,
    SweepSpec,
    claims_report,
    evaluate_claims,
    find_snr_at_target,
    make_config,
    run_sweep,
    sweep_csv_lines,
)
from .util import db_to_linear, linear_to_db

__all__ = [
    "FsoParams",
    "RfParams",
    "SystemConfig",
    "OutageResult",
    "McSettings",
    "SweepSpec",
    "SweepRow",
    "Histogram",
    "MeijerG2013Args",
    "MeijerG2113Args",
    "sample_irradiance",
    "sample_rayleigh_branch_snr",
    "irradiance_pdf",
    "egc_output_snr",
    "mrc_output_snr",
    "sc_select",
    "sc_select_with_link",
    "regularized_lower_gamma",
    "meijer_g_2013",
    "meijer_g_2113",
    "sum_irradiance_pdf",
    "fso_snr_pdf",
    "rf_snr_pdf",
    "fso_outage",
    "fso_outage_meijer_g",
    "fso_outage_quadrature",
    "rf_outage",
    "hybrid_outage",
    "mc_outage",
    "mc_snr_histogram",
    "make_config",
    "run_sweep",
    "sweep_csv_lines",
    "find_snr_at_target",
    "evaluate_claims",
    "claims_report",
    "db_to_linear",
    "linear_to_db",
]
