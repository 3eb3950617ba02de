import math

import numpy as np
import pytest

import oracles
from irssim import (DegenerateGeometry, FadingMode, InvalidAngle, Point3,
                    conventional_rx_power, distance, fading_from_uniform,
                    irs_rx_power, macro_rx_power, sample_fading,
                    scattering_gain)
from irssim.model import SPEED_OF_LIGHT_M_S

LAM28 = SPEED_OF_LIGHT_M_S / 28e9


def test_distance_basics():
    assert distance(Point3(0, 0, 0), Point3(0, 0, 0)) == 0.0
    assert distance(Point3(0, 0, 0), Point3(3, 4, 0)) == 5.0
    # frozen from the 50-digit oracle: sqrt(50^2 + 60^2 + 3.5^2)
    assert distance(Point3(100, 100, 5), Point3(150, 40, 1.5)) == pytest.approx(
        78.18088001551274, rel=1e-12)


def test_distance_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = Point3(*rng.uniform(-500, 500, 3))
        b = Point3(*rng.uniform(-500, 500, 3))
        assert distance(a, b) == distance(b, a)


def test_conventional_power_zero_fading():
    assert conventional_rx_power(6.0, LAM28, 0.0, 50.0, 2.5) == 0.0


def test_conventional_power_unit_distance():
    rng = np.random.default_rng(4)
    for alpha in rng.uniform(1.5, 5.5, 10):
        got = conventional_rx_power(6.0, LAM28, 1.0, 1.0, alpha)
        assert got == pytest.approx(6.0 * LAM28 ** 2 / (16 * math.pi ** 2), rel=1e-12)


def test_conventional_power_frozen_case():
    # 6 W, 28 GHz, d = 100 m, alpha = 2.5, h = 1 (oracle-computed)
    got = conventional_rx_power(6.0, LAM28, 1.0, 100.0, 2.5)
    assert got == pytest.approx(4.355689023324069e-11, rel=1e-12)


def test_macro_power_frozen_case():
    # 50 W, 28 GHz wavelength, d = 400 m, alpha_macro = 4.5
    got = macro_rx_power(50.0, LAM28, 1.0, 400.0, 4.5)
    assert got == pytest.approx(7.089337603066519e-17, rel=1e-12)


def test_degenerate_distance_raises():
    with pytest.raises(DegenerateGeometry):
        conventional_rx_power(6.0, LAM28, 1.0, 0.0, 2.5)
    with pytest.raises(DegenerateGeometry):
        conventional_rx_power(6.0, LAM28, 1.0, 1e-12, 2.5)
    with pytest.raises(DegenerateGeometry):
        irs_rx_power(1.0, math.pi, 100, 100, 128, 128, 0.005, 0.005,
                     LAM28, 45, 45, 0.9, 0.0, 30.0)


def test_conventional_monotone_decreasing_in_distance():
    rng = np.random.default_rng(5)
    for _ in range(200):
        p = rng.uniform(0.1, 60)
        lam = rng.uniform(0.003, 0.02)
        alpha = rng.uniform(1.2, 6.0)
        d1, d2 = sorted(rng.uniform(1.0, 900.0, 2))
        if d1 == d2:
            continue
        assert (conventional_rx_power(p, lam, 1.0, d1, alpha)
                > conventional_rx_power(p, lam, 1.0, d2, alpha))


def test_conventional_linear_in_power_and_fading():
    rng = np.random.default_rng(6)
    for _ in range(100):
        p, lam, h, d, alpha, k = (rng.uniform(0.1, 50), rng.uniform(0.003, 0.02),
                                  rng.uniform(0.01, 8), rng.uniform(1, 500),
                                  rng.uniform(1.5, 5), rng.uniform(0.1, 20))
        base = conventional_rx_power(p, lam, h, d, alpha)
        assert conventional_rx_power(k * p, lam, h, d, alpha) == pytest.approx(
            k * base, rel=1e-12)
        assert conventional_rx_power(p, lam, k * h, d, alpha) == pytest.approx(
            k * base, rel=1e-12)


def test_scattering_gain_half_wave_is_pi():
    rng = np.random.default_rng(7)
    for lam in rng.uniform(1e-3, 0.3, 100):
        assert abs(scattering_gain(lam / 2, lam / 2, lam) - math.pi) <= 1e-12


def test_scattering_gain_cases():
    lam = 0.0107
    assert scattering_gain(lam, lam, lam) == pytest.approx(4 * math.pi, rel=1e-12)
    # frozen from the 50-digit oracle
    assert scattering_gain(0.005, 0.003, 0.0107) == pytest.approx(
        1.6463932152623600, rel=1e-12)


def test_irs_power_collapsed_closed_form():
    # theta = 0, M = N = 1, unit gains, half-wave elements, unit distances
    lam = LAM28
    got = irs_rx_power(2.0, scattering_gain(lam / 2, lam / 2, lam), 1.0, 1.0,
                       1, 1, lam / 2, lam / 2, lam, 0.0, 0.0, 1.0, 1.0, 1.0)
    want = 2.0 * math.pi * (lam / 2) ** 2 * lam ** 2 / (64 * math.pi ** 3)
    assert got == pytest.approx(want, rel=1e-12)


def test_irs_power_frozen_case():
    # 1 W, 28 GHz, 128x128, 20 dB gains, 45 deg, A = 0.9, d1 = 50, d2 = 30
    lam = LAM28
    got = irs_rx_power(1.0, scattering_gain(lam / 2, lam / 2, lam), 100.0, 100.0,
                       128, 128, lam / 2, lam / 2, lam, 45.0, 45.0, 0.9,
                       50.0, 30.0)
    assert got == pytest.approx(2.5131786367142741e-06, rel=1e-12)


def test_irs_power_element_and_reflection_scaling():
    rng = np.random.default_rng(8)
    lam = LAM28
    g_sc = scattering_gain(lam / 2, lam / 2, lam)
    for _ in range(50):
        m = int(rng.integers(1, 200))
        n = int(rng.integers(1, 200))
        a1, a2 = rng.uniform(0.05, 1.0, 2)
        d1, d2 = rng.uniform(5, 300, 2)
        args = dict(p_t=2.0, g_sc=g_sc, g_t=100.0, g_r=100.0,
                    d_x_m=lam / 2, d_y_m=lam / 2, wavelength_m=lam,
                    theta_t_deg=45.0, theta_r_deg=45.0, d1_m=d1, d2_m=d2)
        base = irs_rx_power(m_elems=m, n_elems=n, refl_coeff=a1, **args)
        assert irs_rx_power(m_elems=2 * m, n_elems=n, refl_coeff=a1, **args) \
            == pytest.approx(4.0 * base, rel=1e-12)
        assert irs_rx_power(m_elems=m, n_elems=2 * n, refl_coeff=a1, **args) \
            == pytest.approx(4.0 * base, rel=1e-12)
        other = irs_rx_power(m_elems=m, n_elems=n, refl_coeff=a2, **args)
        assert base / other == pytest.approx((a1 / a2) ** 2, rel=1e-12)


def test_irs_power_wavelength_fourth_power_at_half_wave_pitch():
    # with d_x = d_y = lam/2 the product d_x*d_y*lam^2 carries lam^4 while
    # the scattering gain stays constant: log-log slope must be 4
    lams = [SPEED_OF_LIGHT_M_S / (g * 1e9) for g in (28, 50, 90)]
    powers = [irs_rx_power(1.0, scattering_gain(l / 2, l / 2, l), 100, 100,
                           128, 128, l / 2, l / 2, l, 45, 45, 0.9, 50, 120)
              for l in lams]
    slope = np.polyfit(np.log(lams), np.log(powers), 1)[0]
    assert slope == pytest.approx(4.0, abs=1e-6)


def test_irs_power_rejects_bad_angles():
    lam = LAM28
    g_sc = scattering_gain(lam / 2, lam / 2, lam)
    for bad_t, bad_r in ((90.0, 45.0), (45.0, 95.0), (-5.0, 45.0)):
        with pytest.raises(InvalidAngle):
            irs_rx_power(1.0, g_sc, 100, 100, 128, 128, lam / 2, lam / 2,
                         lam, bad_t, bad_r, 0.9, 50, 30)


def test_randomized_ops_match_oracle():
    rng = np.random.default_rng(9)
    for _ in range(25):
        p, lam, h, d, alpha = (rng.uniform(0.1, 60), rng.uniform(0.003, 0.02),
                               rng.uniform(0.0, 6), rng.uniform(0.5, 900),
                               rng.uniform(1.2, 6))
        want = oracles.direct_power(p, lam, h, d, alpha)
        if want == 0:
            assert conventional_rx_power(p, lam, h, d, alpha) == 0.0
        else:
            assert oracles.rel_err(conventional_rx_power(p, lam, h, d, alpha),
                                   want) <= 1e-9

        dx, dy = rng.uniform(1e-3, 0.05, 2)
        assert oracles.rel_err(scattering_gain(dx, dy, lam),
                               oracles.scattering(dx, dy, lam)) <= 1e-9

        m, n = int(rng.integers(1, 300)), int(rng.integers(1, 300))
        th_t, th_r = rng.uniform(0, 89.9, 2)
        refl = rng.uniform(0.05, 1.0)
        d1, d2 = rng.uniform(1, 400, 2)
        g_t, g_r = rng.uniform(1, 300, 2)
        got = irs_rx_power(p, scattering_gain(dx, dy, lam), g_t, g_r, m, n,
                           dx, dy, lam, th_t, th_r, refl, d1, d2)
        want = oracles.cascaded_power(p, g_t, g_r, m, n, dx, dy, lam,
                                      th_t, th_r, refl, d1, d2)
        assert oracles.rel_err(got, want) <= 1e-9


def test_fading_deterministic_is_unit():
    assert sample_fading(FadingMode("deterministic")) == 1.0
    draws = sample_fading(FadingMode("deterministic"), count=10)
    assert np.all(draws == 1.0)


def test_fading_inverse_cdf_identity():
    assert fading_from_uniform(math.exp(-2.0)) == pytest.approx(2.0, rel=1e-12)
    assert fading_from_uniform(1.0) == 0.0


def test_fading_draws_reproducible_and_positive():
    fm = FadingMode("monte_carlo", samples=5000, seed=99)
    a = sample_fading(fm)
    b = sample_fading(fm)
    assert np.array_equal(a, b)
    assert np.all(a > 0)
    c = sample_fading(fm, substream=1)
    assert not np.array_equal(a, c)


def test_fading_empirical_mean():
    fm = FadingMode("monte_carlo", samples=10 ** 6, seed=2024)
    h = sample_fading(fm)
    assert abs(h.mean() - 1.0) <= 0.005


def test_monte_carlo_power_mean_matches_deterministic():
    # received power is linear in h, so the fading average must sit within
    # 3 standard errors of the h = 1 value
    fm = FadingMode("monte_carlo", samples=10 ** 5, seed=11)
    h = sample_fading(fm)
    powers = np.array([conventional_rx_power(6.0, LAM28, hv, 100.0, 2.5)
                       for hv in h])
    det = conventional_rx_power(6.0, LAM28, 1.0, 100.0, 2.5)
    se = powers.std(ddof=1) / math.sqrt(h.size)
    assert abs(powers.mean() - det) <= 3 * se
