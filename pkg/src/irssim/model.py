"""Scenario types, default parameter sets, and validation.

Every physical quantity is stored in SI units (meters, watts, hertz);
antenna gains are stored in dB and converted to linear once, at
validation time.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from .errors import InvalidConfig, UnsupportedCarrier

SPEED_OF_LIGHT_M_S = 299_792_458.0

#: Carriers with built-in Table-style defaults.
DEFAULT_CARRIERS_GHZ = (28, 50, 70, 90)

#: Links shorter than this are treated as colocated endpoints.
MIN_SEPARATION_M = 1e-9


@dataclass(frozen=True)
class Point3:
    """A 3-D coordinate in meters."""

    x: float
    y: float
    z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class CarrierSpec:
    frequency_hz: float

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT_M_S / self.frequency_hz


@dataclass(frozen=True)
class MicroBsConfig:
    position: Point3
    transmit_power_w: float       # P_t
    path_loss_exponent: float     # alpha, micro tier


@dataclass(frozen=True)
class MacroBsConfig:
    position: Point3
    transmit_power_w: float
    path_loss_exponent: float     # alpha_macro


@dataclass(frozen=True)
class IrsConfig:
    position: Point3
    elements_tx: int              # M, transmitter-side element count
    elements_rx: int              # N, receiver-side element count
    element_len_x_m: float        # d_x, element length
    element_len_y_m: float        # d_y, element width
    tx_gain_db: float             # G_t (dB)
    rx_gain_db: float             # G_r (dB)
    theta_t_deg: float            # BS-to-panel angle, [0, 90)
    theta_r_deg: float            # panel-to-user angle, [0, 90)
    reflection_coeff: float       # A, (0, 1]


@dataclass(frozen=True)
class TierDensities:
    micro_density_per_m2: float
    macro_density_per_m2: float

    @property
    def ratio(self) -> float:
        """macro/micro density ratio used by the association formula."""
        return self.macro_density_per_m2 / self.micro_density_per_m2


@dataclass(frozen=True)
class FadingMode:
    """Small-scale fading handling.

    kind "deterministic" pins the fading coefficient to its unit mean;
    "monte_carlo" averages over `samples` exponential draws seeded by
    `seed` (per-point substreams, order independent).
    """

    kind: str = "deterministic"
    samples: int = 0
    seed: int = 0


@dataclass(frozen=True)
class ScenarioConfig:
    carrier: CarrierSpec
    micro: MicroBsConfig
    macro_bs: MacroBsConfig
    densities: TierDensities
    cell_center_xy: tuple[float, float]
    cell_radius_m: float
    user_height_m: float
    fading: FadingMode = FadingMode()
    irs: IrsConfig | None = None  # present <=> IRS-assisted mode

    @property
    def mode(self) -> str:
        return "irs" if self.irs is not None else "conventional"


@dataclass(frozen=True)
class ValidatedScenario:
    """A checked config with derived quantities precomputed.

    Immutable after construction; safe to share across concurrent
    evaluators.
    """

    config: ScenarioConfig
    wavelength_m: float
    gt_linear: float              # 1.0 when no IRS
    gr_linear: float              # 1.0 when no IRS
    bs_irs_distance_m: float      # d1; 0.0 when no IRS
    fingerprint: str

    @property
    def mode(self) -> str:
        return self.config.mode

    @property
    def serving_position(self) -> Point3:
        """Node the users receive from: the IRS panel if present, else the micro BS."""
        cfg = self.config
        return cfg.irs.position if cfg.irs is not None else cfg.micro.position


def db_to_linear(g_db: float) -> float:
    """Convert a dB gain to linear scale: 10^(g/10)."""
    return 10.0 ** (g_db / 10.0)


def _finite(*values) -> bool:
    return all(math.isfinite(v) for v in values)


def validate(config: ScenarioConfig) -> ValidatedScenario:
    """Check every field invariant and precompute derived link constants.

    Raises InvalidConfig carrying the dotted path of every violated field.
    """
    bad: list[str] = []

    def need(ok: bool, path: str) -> None:
        if not ok:
            bad.append(path)

    c = config
    need(_finite(c.carrier.frequency_hz) and c.carrier.frequency_hz > 0,
         "carrier.frequency_hz")

    for path, p in (("micro.position", c.micro.position),
                    ("macro_bs.position", c.macro_bs.position)):
        need(_finite(p.x, p.y, p.z), path)
    need(_finite(c.micro.transmit_power_w) and c.micro.transmit_power_w > 0,
         "micro.transmit_power_w")
    need(_finite(c.micro.path_loss_exponent) and c.micro.path_loss_exponent > 0,
         "micro.path_loss_exponent")
    need(_finite(c.macro_bs.transmit_power_w) and c.macro_bs.transmit_power_w > 0,
         "macro_bs.transmit_power_w")
    need(_finite(c.macro_bs.path_loss_exponent) and c.macro_bs.path_loss_exponent > 0,
         "macro_bs.path_loss_exponent")

    if c.irs is not None:
        i = c.irs
        need(_finite(i.position.x, i.position.y, i.position.z), "irs.position")
        need(i.elements_tx >= 1, "irs.elements_tx")
        need(i.elements_rx >= 1, "irs.elements_rx")
        need(_finite(i.element_len_x_m) and i.element_len_x_m > 0, "irs.element_len_x_m")
        need(_finite(i.element_len_y_m) and i.element_len_y_m > 0, "irs.element_len_y_m")
        need(_finite(i.tx_gain_db), "irs.tx_gain_db")
        need(_finite(i.rx_gain_db), "irs.rx_gain_db")
        need(_finite(i.theta_t_deg) and 0.0 <= i.theta_t_deg < 90.0, "irs.theta_t_deg")
        need(_finite(i.theta_r_deg) and 0.0 <= i.theta_r_deg < 90.0, "irs.theta_r_deg")
        need(_finite(i.reflection_coeff) and 0.0 < i.reflection_coeff <= 1.0,
             "irs.reflection_coeff")

    need(_finite(c.densities.micro_density_per_m2) and c.densities.micro_density_per_m2 > 0,
         "densities.micro_density_per_m2")
    need(_finite(c.densities.macro_density_per_m2) and c.densities.macro_density_per_m2 > 0,
         "densities.macro_density_per_m2")

    need(_finite(*c.cell_center_xy), "cell_center_xy")
    need(_finite(c.cell_radius_m) and c.cell_radius_m > 0, "cell_radius_m")
    need(_finite(c.user_height_m) and c.user_height_m >= 0, "user_height_m")

    if c.fading.kind not in ("deterministic", "monte_carlo"):
        bad.append("fading.kind")
    elif c.fading.kind == "monte_carlo":
        need(c.fading.samples >= 1, "fading.samples")

    d1 = 0.0
    if c.irs is not None and "irs.position" not in bad and "micro.position" not in bad:
        dx = c.micro.position.x - c.irs.position.x
        dy = c.micro.position.y - c.irs.position.y
        dz = c.micro.position.z - c.irs.position.z
        d1 = math.sqrt(dx * dx + dy * dy + dz * dz)
        # the cascaded model needs a real BS -> panel hop
        need(d1 >= MIN_SEPARATION_M, "irs.position")

    if bad:
        raise InvalidConfig(bad)

    gt = db_to_linear(c.irs.tx_gain_db) if c.irs is not None else 1.0
    gr = db_to_linear(c.irs.rx_gain_db) if c.irs is not None else 1.0
    return ValidatedScenario(
        config=c,
        wavelength_m=c.carrier.wavelength_m,
        gt_linear=gt,
        gr_linear=gr,
        bs_irs_distance_m=d1,
        fingerprint=fingerprint(c),
    )


def default_scenario(mode: str, carrier_ghz: float) -> ScenarioConfig:
    """Built-in defaults for the two-tier reference layout.

    mode "conventional": micro BS at the cell center (100, 100, 5) m,
    P_t = 6 W. mode "irs": micro BS at (0, 0, 5) m feeding a 128x128-element
    panel at the cell center, P_t = 1 W, 45 deg angles, A = 0.9, half-wave
    element pitch, 20 dB gains.

    The macro BS placement (500, 500, 25) m and the 1.5 m user height are
    tool defaults (configurable); both are echoed in every report.
    """
    if carrier_ghz not in DEFAULT_CARRIERS_GHZ:
        raise UnsupportedCarrier(
            f"carrier_ghz must be one of {DEFAULT_CARRIERS_GHZ}, got {carrier_ghz}")
    if mode not in ("conventional", "irs"):
        raise InvalidConfig("mode", f"mode must be 'conventional' or 'irs', got {mode!r}")

    freq = float(carrier_ghz) * 1e9
    lam = SPEED_OF_LIGHT_M_S / freq
    micro_density = 500.0 / (math.pi * 100.0 ** 2)   # 500 BSs per 100 m-radius disc
    densities = TierDensities(micro_density, micro_density / 5.0)
    macro = MacroBsConfig(position=Point3(500.0, 500.0, 25.0),
                          transmit_power_w=50.0, path_loss_exponent=4.5)

    if mode == "conventional":
        micro = MicroBsConfig(position=Point3(100.0, 100.0, 5.0),
                              transmit_power_w=6.0, path_loss_exponent=2.5)
        irs = None
    else:
        micro = MicroBsConfig(position=Point3(0.0, 0.0, 5.0),
                              transmit_power_w=1.0, path_loss_exponent=2.5)
        irs = IrsConfig(position=Point3(100.0, 100.0, 5.0),
                        elements_tx=128, elements_rx=128,
                        element_len_x_m=lam / 2.0, element_len_y_m=lam / 2.0,
                        tx_gain_db=20.0, rx_gain_db=20.0,
                        theta_t_deg=45.0, theta_r_deg=45.0,
                        reflection_coeff=0.9)

    return ScenarioConfig(
        carrier=CarrierSpec(frequency_hz=freq),
        micro=micro,
        macro_bs=macro,
        densities=densities,
        cell_center_xy=(100.0, 100.0),
        cell_radius_m=100.0,
        user_height_m=1.5,
        fading=FadingMode("deterministic"),
        irs=irs,
    )


def config_to_dict(config: ScenarioConfig) -> dict:
    """Canonical plain-dict form of a config (the JSON file schema)."""
    c = config
    out = {
        "mode": c.mode,
        "carrier": {"frequency_hz": c.carrier.frequency_hz},
        "micro": {
            "position": list(c.micro.position.as_tuple()),
            "transmit_power_w": c.micro.transmit_power_w,
            "path_loss_exponent": c.micro.path_loss_exponent,
        },
        "macro_bs": {
            "position": list(c.macro_bs.position.as_tuple()),
            "transmit_power_w": c.macro_bs.transmit_power_w,
            "path_loss_exponent": c.macro_bs.path_loss_exponent,
        },
        "densities": {
            "micro_density_per_m2": c.densities.micro_density_per_m2,
            "macro_density_per_m2": c.densities.macro_density_per_m2,
        },
        "cell_center_xy": list(c.cell_center_xy),
        "cell_radius_m": c.cell_radius_m,
        "user_height_m": c.user_height_m,
        "fading": {"kind": c.fading.kind},
    }
    if c.fading.kind == "monte_carlo":
        out["fading"]["samples"] = c.fading.samples
        out["fading"]["seed"] = c.fading.seed
    if c.irs is not None:
        i = c.irs
        out["irs"] = {
            "position": list(i.position.as_tuple()),
            "elements_tx": i.elements_tx,
            "elements_rx": i.elements_rx,
            "element_len_x_m": i.element_len_x_m,
            "element_len_y_m": i.element_len_y_m,
            "tx_gain_db": i.tx_gain_db,
            "rx_gain_db": i.rx_gain_db,
            "theta_t_deg": i.theta_t_deg,
            "theta_r_deg": i.theta_r_deg,
            "reflection_coeff": i.reflection_coeff,
        }
    return out


def fingerprint(config: ScenarioConfig) -> str:
    """Stable short hash identifying a scenario in reports and manifests."""
    blob = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
