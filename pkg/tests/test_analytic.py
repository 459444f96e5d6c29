import math

import numpy as np
import pytest
from scipy import integrate

from fsorf import (
    FsoParams,
    RfParams,
    SystemConfig,
    fso_outage,
    fso_outage_meijer_g,
    fso_outage_quadrature,
    fso_snr_pdf,
    hybrid_outage,
    irradiance_pdf,
    make_config,
    regularized_lower_gamma,
    rf_outage,
    rf_snr_pdf,
    sum_irradiance_pdf,
)
from fsorf.analytic import OutageResult


def cfg_of(m, lam, fso_snr, rf_snr, gamma_th):
    return SystemConfig(
        m=m, gamma_th=gamma_th, fso=FsoParams(lam, fso_snr), rf=RfParams(rf_snr)
    )


# ---------------------------------------------------------------- densities


def test_sum_irradiance_pdf_values():
    # M = 1 collapses to the single-branch law
    for z in (0.0, 0.3, 2.0):
        assert sum_irradiance_pdf(1, 1.3, z) == pytest.approx(
            irradiance_pdf(FsoParams(1.3, 1.0), z), rel=1e-14
        )
    assert sum_irradiance_pdf(2, 1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)
    with pytest.raises(ValueError):
        sum_irradiance_pdf(2, 1.0, -1.0)


def test_sum_irradiance_pdf_moments():
    m, lam = 3, 2.0
    total, _ = integrate.quad(lambda z: sum_irradiance_pdf(m, lam, z), 0, 60, limit=200)
    mean, _ = integrate.quad(lambda z: z * sum_irradiance_pdf(m, lam, z), 0, 60, limit=200)
    second, _ = integrate.quad(lambda z: z * z * sum_irradiance_pdf(m, lam, z), 0, 60, limit=200)
    assert total == pytest.approx(1.0, abs=1e-10)
    assert mean == pytest.approx(m / lam, rel=1e-10)
    assert second - mean**2 == pytest.approx(m / lam**2, rel=1e-9)


def test_mgf_of_irradiance_sum():
    # Laplace transform of the summed-irradiance density is (lam/(s+lam))^M
    for m in (1, 2, 4):
        for lam in (0.5, 1.0):
            for s in (0.1, 1.0, 10.0):
                val, _ = integrate.quad(
                    lambda z: sum_irradiance_pdf(m, lam, z) * math.exp(-s * z),
                    0,
                    np.inf,
                    limit=300,
                )
                assert val == pytest.approx((lam / (s + lam)) ** m, rel=1e-8)


def test_fso_snr_pdf_point_value_and_domain():
    cfg = cfg_of(1, 1.0, 1.0, 1.0, 1.0)
    assert fso_snr_pdf(cfg, 1.0) == pytest.approx(0.5 * math.exp(-1.0), rel=1e-14)
    with pytest.raises(ValueError):
        fso_snr_pdf(cfg, 0.0)
    with pytest.raises(ValueError):
        fso_snr_pdf(cfg, -1.0)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_fso_snr_pdf_normalizes(m, lam):
    cfg = cfg_of(m, lam, 10.0, 10.0, 1.0)
    # gamma = u^2 tames the M = 1 divergence at the origin
    total, _ = integrate.quad(
        lambda u: 2.0 * u * fso_snr_pdf(cfg, u * u), 1e-12, 200.0, limit=400
    )
    assert total == pytest.approx(1.0, abs=1e-8)


def test_fso_snr_cdf_matches_erlang_change_of_variables():
    m, lam, snr = 2, 1.0, 20.0
    cfg = cfg_of(m, lam, snr, snr, 1.0)
    for gamma in (2.0, 10.0, 40.0):
        cdf_pdf, _ = integrate.quad(
            lambda u: 2.0 * u * fso_snr_pdf(cfg, u * u), 0.0, math.sqrt(gamma), limit=300
        )
        cdf_erlang, _ = integrate.quad(
            lambda z: sum_irradiance_pdf(m, lam, z),
            0.0,
            math.sqrt(gamma * m / snr),
            limit=300,
        )
        assert cdf_pdf == pytest.approx(cdf_erlang, rel=1e-10)


def test_rf_snr_pdf_values():
    cfg1 = cfg_of(1, 1.0, 1.0, 3.0, 1.0)
    for g in (0.0, 0.5, 4.0):
        assert rf_snr_pdf(cfg1, g) == pytest.approx(math.exp(-g / 3.0) / 3.0, rel=1e-14)
    cfg2 = cfg_of(2, 1.0, 1.0, 1.0, 1.0)
    assert rf_snr_pdf(cfg2, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)
    with pytest.raises(ValueError):
        rf_snr_pdf(cfg2, -0.5)


def test_rf_snr_pdf_mean():
    cfg = cfg_of(3, 1.0, 1.0, 2.0, 1.0)
    mean, _ = integrate.quad(lambda g: g * rf_snr_pdf(cfg, g), 0, np.inf, limit=300)
    assert mean == pytest.approx(6.0, rel=1e-9)


# ------------------------------------------------------------------ outage


def test_fso_outage_examples():
    assert fso_outage(cfg_of(1, 1.0, 10.0, 1.0, 10.0)).probability == pytest.approx(
        1.0 - math.exp(-1.0), rel=1e-12
    )
    assert fso_outage(cfg_of(2, 1.0, 20.0, 1.0, 10.0)).probability == pytest.approx(
        1.0 - 2.0 * math.exp(-1.0), rel=1e-12
    )
    assert fso_outage(cfg_of(3, 0.5, 100.0, 1.0, 0.0)).probability == 0.0
    assert fso_outage(cfg_of(2, 1.0, 20.0, 1.0, 1e-12)).probability < 1e-10


def test_fso_outage_meijer_route_examples():
    # quadrature oracle pins the full Meijer-G expression at two configs
    cfg = cfg_of(1, 1.0, 10.0, 1.0, 10.0)
    assert fso_outage_meijer_g(cfg).probability == pytest.approx(
        fso_outage_quadrature(cfg).probability, rel=1e-8
    )
    assert fso_outage_meijer_g(cfg).probability == pytest.approx(1.0 - math.exp(-1.0), rel=1e-10)
    cfg = cfg_of(2, 1.0, 20.0, 1.0, 10.0)
    assert fso_outage_meijer_g(cfg).probability == pytest.approx(
        fso_outage_quadrature(cfg).probability, rel=1e-8
    )


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("snr", [1.0, 10.0, 100.0, 10000.0])
def test_fso_outage_three_routes_agree(m, lam, snr):
    cfg = cfg_of(m, lam, snr, snr, 10.0)
    closed = fso_outage(cfg)
    quad = fso_outage_quadrature(cfg)
    meijer = fso_outage_meijer_g(cfg)
    assert closed.method == "closed_form"
    assert quad.method == "quadrature"
    assert closed.probability == pytest.approx(quad.probability, rel=1e-8)
    assert closed.probability == pytest.approx(meijer.probability, rel=1e-10)


def test_rf_outage_examples():
    assert rf_outage(cfg_of(1, 1.0, 1.0, 10.0, 10.0)).probability == pytest.approx(
        1.0 - math.exp(-1.0), rel=1e-13
    )
    assert rf_outage(cfg_of(2, 1.0, 1.0, 10.0, 10.0)).probability == pytest.approx(
        1.0 - 2.0 * math.exp(-1.0), rel=1e-13
    )
    # quadrature of the combiner-output density over [0, threshold]
    cfg = cfg_of(2, 1.0, 1.0, 1.0, 0.1)
    by_quad, _ = integrate.quad(lambda g: rf_snr_pdf(cfg, g), 0.0, 0.1)
    assert rf_outage(cfg).probability == pytest.approx(by_quad, rel=1e-10)
    assert rf_outage(cfg).probability == pytest.approx(0.00467884016044, rel=1e-9)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 7])
@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 4.0, 10.0])
def test_rf_outage_is_erlang_cdf(m, x):
    cfg = cfg_of(m, 1.0, 1.0, 10.0 / x, 10.0)
    assert abs(rf_outage(cfg).probability - regularized_lower_gamma(m, x)) <= 1e-12


def test_hybrid_outage_product():
    cfg = cfg_of(1, 1.0, 10.0, 10.0, 10.0)
    p = 1.0 - math.exp(-1.0)
    assert hybrid_outage(cfg).probability == pytest.approx(p * p, rel=1e-12)
    assert hybrid_outage(cfg).probability == pytest.approx(0.3995764, abs=5e-8)
    assert hybrid_outage(cfg_of(2, 1.0, 20.0, 20.0, 0.0)).probability == 0.0
    cfg2 = cfg_of(2, 1.0, 20.0, 20.0, 10.0)
    expect = (1.0 - 2.0 * math.exp(-1.0)) * (1.0 - 1.5 * math.exp(-0.5))
    assert hybrid_outage(cfg2).probability == pytest.approx(expect, rel=1e-12)
    assert hybrid_outage(cfg2).probability == pytest.approx(0.0238357, abs=5e-7)


def test_outage_ordering_and_range():
    for m in (1, 2, 4):
        for snr_db in (0.0, 10.0, 25.0):
            cfg = make_config(m, 1.0, snr_db, 10.0)
            pf = fso_outage(cfg).probability
            pr = rf_outage(cfg).probability
            ph = hybrid_outage(cfg).probability
            assert 0.0 <= ph <= min(pf, pr) <= 1.0


def test_outage_monotone_in_threshold_and_snr():
    thresholds = [0.1, 1.0, 5.0, 20.0, 100.0]
    for m in (1, 3):
        outs = [
            (
                fso_outage(cfg_of(m, 1.0, 50.0, 50.0, t)).probability,
                rf_outage(cfg_of(m, 1.0, 50.0, 50.0, t)).probability,
                hybrid_outage(cfg_of(m, 1.0, 50.0, 50.0, t)).probability,
            )
            for t in thresholds
        ]
        for a, b in zip(outs, outs[1:]):
            assert all(x <= y + 1e-15 for x, y in zip(a, b))
    snrs = [1.0, 10.0, 100.0, 1000.0]
    for m in (1, 3):
        outs = [
            (
                fso_outage(cfg_of(m, 1.0, s, s, 10.0)).probability,
                rf_outage(cfg_of(m, 1.0, s, s, 10.0)).probability,
                hybrid_outage(cfg_of(m, 1.0, s, s, 10.0)).probability,
            )
            for s in snrs
        ]
        for a, b in zip(outs, outs[1:]):
            assert all(x >= y - 1e-15 for x, y in zip(a, b))


def test_outage_derivative_matches_pdf():
    # d/dthreshold of the outage CDF equals the combiner-output density
    h_scale = np.finfo(float).eps ** (1.0 / 3.0)
    for m, lam, snr, gth in [(1, 1.0, 10.0, 5.0), (2, 0.5, 30.0, 10.0), (3, 2.0, 8.0, 2.0)]:
        h = gth * h_scale
        up = fso_outage(cfg_of(m, lam, snr, snr, gth + h)).probability
        dn = fso_outage(cfg_of(m, lam, snr, snr, gth - h)).probability
        deriv = (up - dn) / (2.0 * h)
        assert deriv == pytest.approx(fso_snr_pdf(cfg_of(m, lam, snr, snr, gth), gth), rel=1e-5)
        up = rf_outage(cfg_of(m, lam, snr, snr, gth + h)).probability
        dn = rf_outage(cfg_of(m, lam, snr, snr, gth - h)).probability
        deriv = (up - dn) / (2.0 * h)
        assert deriv == pytest.approx(rf_snr_pdf(cfg_of(m, lam, snr, snr, gth), gth), rel=1e-5)


def test_outage_result_validation():
    with pytest.raises(ValueError):
        OutageResult(probability=1.2, method="closed_form")
    with pytest.raises(ValueError):
        OutageResult(probability=0.5, method="guesswork")
    with pytest.raises(ValueError):
        OutageResult(probability=0.5, method="monte_carlo", ci_halfwidth=-1.0)
