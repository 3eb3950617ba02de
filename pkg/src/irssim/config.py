"""JSON scenario files: schema checking, defaulting, load and save.

A config file is a flat JSON object mirroring the scenario field names.
Absent fields fall back to the built-in defaults for the requested mode
and carrier; unknown keys are rejected with their dotted path. Minimal
file:

    {"mode": "conventional", "carrier_ghz": 28}
"""

from __future__ import annotations

import json
import math
import os

from .errors import InvalidConfig, ParseError, UnknownKey
from .model import (CarrierSpec, FadingMode, IrsConfig, MacroBsConfig,
                    MicroBsConfig, Point3, ScenarioConfig, SPEED_OF_LIGHT_M_S,
                    TierDensities, config_to_dict, default_scenario, validate)

_TOP_KEYS = {"mode", "carrier_ghz", "carrier", "micro", "macro_bs", "irs",
             "densities", "cell_center_xy", "cell_radius_m", "user_height_m",
             "fading"}
_SECTION_KEYS = {
    "carrier": {"frequency_hz"},
    "micro": {"position", "transmit_power_w", "path_loss_exponent"},
    "macro_bs": {"position", "transmit_power_w", "path_loss_exponent"},
    "irs": {"position", "elements_tx", "elements_rx", "element_len_x_m",
            "element_len_y_m", "tx_gain_db", "rx_gain_db", "theta_t_deg",
            "theta_r_deg", "reflection_coeff"},
    "densities": {"micro_density_per_m2", "macro_density_per_m2"},
    "fading": {"kind", "samples", "seed"},
}


def _reject_unknown(data: dict) -> None:
    for key in data:
        if key not in _TOP_KEYS:
            raise UnknownKey(key)
    for section, allowed in _SECTION_KEYS.items():
        block = data.get(section)
        if block is None:
            continue
        if not isinstance(block, dict):
            raise ParseError(f"section {section!r} must be an object")
        for key in block:
            if key not in allowed:
                raise UnknownKey(f"{section}.{key}")


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{path} must be a number")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{path} must be an integer")
    if isinstance(value, float):
        if not value.is_integer():
            raise ParseError(f"{path} must be an integer")
        value = int(value)
    if not isinstance(value, int):
        raise ParseError(f"{path} must be an integer")
    return value


def _as_point(value, path: str) -> Point3:
    if not (isinstance(value, (list, tuple)) and len(value) == 3):
        raise ParseError(f"{path} must be a [x, y, z] triple")
    return Point3(*(_as_float(v, path) for v in value))


def _get(block: dict | None, key: str, default, conv, path: str):
    if block is None or key not in block:
        return default
    return conv(block[key], path)


def config_from_dict(data: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a parsed JSON object, filling defaults."""
    if not isinstance(data, dict):
        raise ParseError("config root must be a JSON object")
    _reject_unknown(data)

    has_irs = "irs" in data and data["irs"] is not None
    mode = data.get("mode", "irs" if has_irs else "conventional")
    if mode not in ("conventional", "irs"):
        raise InvalidConfig("mode", f"mode must be 'conventional' or 'irs', got {mode!r}")
    if mode == "conventional" and has_irs:
        raise InvalidConfig("mode", "mode 'conventional' cannot carry an irs block")

    carrier_ghz = data.get("carrier_ghz", 28)
    if isinstance(carrier_ghz, bool) or not isinstance(carrier_ghz, (int, float)):
        raise ParseError("carrier_ghz must be a number")
    defaults = default_scenario(mode, carrier_ghz)

    freq = _get(data.get("carrier"), "frequency_hz",
                defaults.carrier.frequency_hz, _as_float, "carrier.frequency_hz")

    micro_d, macro_d = defaults.micro, defaults.macro_bs
    micro = MicroBsConfig(
        position=_get(data.get("micro"), "position", micro_d.position,
                      _as_point, "micro.position"),
        transmit_power_w=_get(data.get("micro"), "transmit_power_w",
                              micro_d.transmit_power_w, _as_float,
                              "micro.transmit_power_w"),
        path_loss_exponent=_get(data.get("micro"), "path_loss_exponent",
                                micro_d.path_loss_exponent, _as_float,
                                "micro.path_loss_exponent"),
    )
    macro = MacroBsConfig(
        position=_get(data.get("macro_bs"), "position", macro_d.position,
                      _as_point, "macro_bs.position"),
        transmit_power_w=_get(data.get("macro_bs"), "transmit_power_w",
                              macro_d.transmit_power_w, _as_float,
                              "macro_bs.transmit_power_w"),
        path_loss_exponent=_get(data.get("macro_bs"), "path_loss_exponent",
                                macro_d.path_loss_exponent, _as_float,
                                "macro_bs.path_loss_exponent"),
    )

    irs = None
    if mode == "irs":
        irs_d = defaults.irs
        block = data.get("irs")
        # element pitch defaults track the final carrier at half-wave spacing
        half_wave = SPEED_OF_LIGHT_M_S / freq / 2.0 if freq > 0 else math.nan
        irs = IrsConfig(
            position=_get(block, "position", irs_d.position, _as_point,
                          "irs.position"),
            elements_tx=_get(block, "elements_tx", irs_d.elements_tx, _as_int,
                             "irs.elements_tx"),
            elements_rx=_get(block, "elements_rx", irs_d.elements_rx, _as_int,
                             "irs.elements_rx"),
            element_len_x_m=_get(block, "element_len_x_m", half_wave, _as_float,
                                 "irs.element_len_x_m"),
            element_len_y_m=_get(block, "element_len_y_m", half_wave, _as_float,
                                 "irs.element_len_y_m"),
            tx_gain_db=_get(block, "tx_gain_db", irs_d.tx_gain_db, _as_float,
                            "irs.tx_gain_db"),
            rx_gain_db=_get(block, "rx_gain_db", irs_d.rx_gain_db, _as_float,
                            "irs.rx_gain_db"),
            theta_t_deg=_get(block, "theta_t_deg", irs_d.theta_t_deg, _as_float,
                             "irs.theta_t_deg"),
            theta_r_deg=_get(block, "theta_r_deg", irs_d.theta_r_deg, _as_float,
                             "irs.theta_r_deg"),
            reflection_coeff=_get(block, "reflection_coeff",
                                  irs_d.reflection_coeff, _as_float,
                                  "irs.reflection_coeff"),
        )

    dens_d = defaults.densities
    densities = TierDensities(
        micro_density_per_m2=_get(data.get("densities"), "micro_density_per_m2",
                                  dens_d.micro_density_per_m2, _as_float,
                                  "densities.micro_density_per_m2"),
        macro_density_per_m2=_get(data.get("densities"), "macro_density_per_m2",
                                  dens_d.macro_density_per_m2, _as_float,
                                  "densities.macro_density_per_m2"),
    )

    center = data.get("cell_center_xy", list(defaults.cell_center_xy))
    if not (isinstance(center, (list, tuple)) and len(center) == 2):
        raise ParseError("cell_center_xy must be a [x, y] pair")
    cell_center = (_as_float(center[0], "cell_center_xy"),
                   _as_float(center[1], "cell_center_xy"))

    fading_block = data.get("fading")
    if fading_block is None:
        fading = defaults.fading
    else:
        kind = fading_block.get("kind", "deterministic")
        if kind == "monte_carlo":
            fading = FadingMode(kind="monte_carlo",
                                samples=_as_int(fading_block.get("samples", 0),
                                                "fading.samples"),
                                seed=_as_int(fading_block.get("seed", 0),
                                             "fading.seed"))
        else:
            fading = FadingMode(kind=kind)

    return ScenarioConfig(
        carrier=CarrierSpec(frequency_hz=freq),
        micro=micro,
        macro_bs=macro,
        densities=densities,
        cell_center_xy=cell_center,
        cell_radius_m=_get(data, "cell_radius_m", defaults.cell_radius_m,
                           _as_float, "cell_radius_m"),
        user_height_m=_get(data, "user_height_m", defaults.user_height_m,
                           _as_float, "user_height_m"),
        fading=fading,
        irs=irs,
    )


def load_config(path: str | os.PathLike) -> ScenarioConfig:
    """Load, default-fill, and validate a scenario config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    config = config_from_dict(data)
    validate(config)   # raise InvalidConfig now rather than at first use
    return config


def save_config(config: ScenarioConfig, path: str | os.PathLike) -> None:
    """Write a config as pretty JSON; load_config round-trips it exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2, sort_keys=True)
        fh.write("\n")
