"""Link geometry, received-power models, and the fading sampler.

Two downlink models are implemented:

  direct link     p_t * wavelength^2 * h / (16 pi^2 d^alpha)
  cascaded link   p_t * G_sc*G_t*G_r * M^2*N^2 * d_x*d_y*wavelength^2
                  * cos(theta_t)*cos(theta_r) * A^2 / (d1^2 d2^2 * 64 pi^3)

with G_sc = 4 pi d_x d_y / wavelength^2 the per-element scattering gain.
The macro tier reuses the direct-link form with its own power and exponent.
All powers are linear watts; dB conversion happens only at I/O boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateGeometry, InvalidAngle
from .model import FadingMode, MIN_SEPARATION_M, Point3


@dataclass(frozen=True)
class LinkResult:
    """Received power for one user from one transmitter path."""

    received_power_w: float
    path: str                          # "conventional_micro" | "irs_micro" | "macro"
    distance_terms: tuple[float, ...]  # (d,) for direct paths, (d1, d2) cascaded


def distance(a: Point3, b: Point3) -> float:
    """Euclidean separation in meters."""
    dx = a.x - b.x
    dy = a.y - b.y
    dz = a.z - b.z
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def conventional_rx_power(p_t: float, wavelength_m: float, h: float,
                          d_m: float, alpha: float) -> float:
    """Direct-link received power with power-law distance decay."""
    if d_m < MIN_SEPARATION_M:
        raise DegenerateGeometry(f"user colocated with transmitter (d = {d_m} m)")
    return p_t * wavelength_m ** 2 * h / (16.0 * math.pi ** 2 * d_m ** alpha)


def macro_rx_power(p_t: float, wavelength_m: float, h: float,
                   d_m: float, alpha_macro: float) -> float:
    """Macro-tier received power; the direct-link form with macro parameters."""
    return conventional_rx_power(p_t, wavelength_m, h, d_m, alpha_macro)


def scattering_gain(d_x_m: float, d_y_m: float, wavelength_m: float) -> float:
    """Per-element scattering gain, 4 pi d_x d_y / wavelength^2."""
    return 4.0 * math.pi * d_x_m * d_y_m / wavelength_m ** 2


def irs_rx_power(p_t: float, g_sc: float, g_t: float, g_r: float,
                 m_elems: int, n_elems: int, d_x_m: float, d_y_m: float,
                 wavelength_m: float, theta_t_deg: float, theta_r_deg: float,
                 refl_coeff: float, d1_m: float, d2_m: float) -> float:
    """Cascaded BS -> panel -> user received power.

    g_t / g_r are linear gains; angles are in degrees and must lie in
    [0, 90) so both cosines are strictly positive.
    """
    if d1_m < MIN_SEPARATION_M or d2_m < MIN_SEPARATION_M:
        raise DegenerateGeometry(
            f"degenerate cascaded link (d1 = {d1_m} m, d2 = {d2_m} m)")
    if not (0.0 <= theta_t_deg < 90.0):
        raise InvalidAngle(f"theta_t must be in [0, 90) deg, got {theta_t_deg}")
    if not (0.0 <= theta_r_deg < 90.0):
        raise InvalidAngle(f"theta_r must be in [0, 90) deg, got {theta_r_deg}")
    cos_t = math.cos(math.radians(theta_t_deg))
    cos_r = math.cos(math.radians(theta_r_deg))
    num = (p_t * g_sc * g_t * g_r * float(m_elems) ** 2 * float(n_elems) ** 2
           * d_x_m * d_y_m * wavelength_m ** 2 * cos_t * cos_r * refl_coeff ** 2)
    den = d1_m ** 2 * d2_m ** 2 * 64.0 * math.pi ** 3
    return num / den


def fading_from_uniform(u):
    """Inverse-CDF map u -> h for unit-mean exponential fading."""
    return -np.log(u)


def sample_fading(fading: FadingMode, substream: int = 0, count: int | None = None,
                  lane: int = 0):
    """Draw fading coefficients h for one evaluation point.

    Deterministic mode pins h to 1.0 (the distribution mean). Monte Carlo
    mode returns exp(1) draws from the (seed, substream) counter stream;
    lane 0 is the serving link, lane 1 the macro link.
    """
    if fading.kind == "deterministic":
        return 1.0 if count is None else np.ones(count)
    n = fading.samples if count is None else count
    u = kernels.stream_uniforms(fading.seed, substream, lane, n)
    h = fading_from_uniform(u)
    return float(h[0]) if count is None and n == 1 else h
