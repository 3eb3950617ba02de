"""Result serialization: CSV heatmaps, text summaries, and run manifests."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone

from .model import ValidatedScenario, config_to_dict
from .optimize import OptimizationOutcome, energy_saving_ratio
from .sweep import AssociationMap, EDGE_BAND_FRACTION, ModeComparison

TOOL_VERSION = "0.1.0"

#: Reference conventional transmit power for the saving figure in reports.
BASELINE_CONV_POWER_W = 6.0


def emit_map_csv(amap: AssociationMap, path: str | os.PathLike) -> None:
    """Write one row per user: header `x_m,y_m,assoc_prob`, 9-decimal floats.

    Row order is the drop's generation order; identical maps serialize to
    identical bytes.
    """
    lines = ["x_m,y_m,assoc_prob"]
    for x, y, p in zip(amap.x_m, amap.y_m, amap.assoc_prob):
        lines.append(f"{x:.9f},{y:.9f},{p:.9f}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def _format_params(scenario: ValidatedScenario, indent: str = "  ") -> list[str]:
    lines = []
    for section, block in sorted(config_to_dict(scenario.config).items()):
        if isinstance(block, dict):
            for key, value in sorted(block.items()):
                lines.append(f"{indent}{section}.{key} = {value}")
        else:
            lines.append(f"{indent}{section} = {block}")
    lines.append(f"{indent}derived.wavelength_m = {scenario.wavelength_m!r}")
    return lines


def _format_stats(label: str, amap: AssociationMap, indent: str = "  ") -> list[str]:
    s = amap.stats
    return [
        f"{indent}{label}: max = {s.max:.6f}  min = {s.min:.6f}  "
        f"mean = {s.mean:.6f}  edge_min = {s.edge_min:.6f}"
    ]


def _assumption_lines(scenarios) -> list[str]:
    radius = scenarios[0].config.cell_radius_m
    pos = scenarios[0].config.macro_bs.position
    height = scenarios[0].config.user_height_m
    return [
        "assumptions (tool defaults unless overridden in the config):",
        f"  - macro BS placement ({pos.x}, {pos.y}, {pos.z}) m; the macro link "
        "reuses the direct power-law model with its own power and exponent",
        f"  - user antenna height {height} m",
        f"  - cell edge band = horizontal distance >= "
        f"{EDGE_BAND_FRACTION:.1f} x radius ({EDGE_BAND_FRACTION * radius:.1f} m) "
        "from the serving node",
        "  - energy-saving figures compare nominal transmit powers only "
        "(no panel control overhead)",
    ]


def emit_summary(path: str | os.PathLike,
                 scenarios: list[ValidatedScenario],
                 maps: list[AssociationMap] | None = None,
                 comparison: ModeComparison | None = None,
                 outcome: OptimizationOutcome | None = None) -> None:
    """Write the human-readable run report.

    At least one of maps / comparison / outcome must be present; an empty
    report is never produced.
    """
    if not scenarios:
        raise ValueError("emit_summary needs at least one scenario")
    if maps is None and comparison is None and outcome is None:
        raise ValueError("emit_summary needs a map, a comparison, or an outcome")

    lines = [
        "two-tier association summary",
        "============================",
        f"tool version: {TOOL_VERSION}",
    ]
    for sc in scenarios:
        lines.append("")
        lines.append(f"scenario {sc.fingerprint} (mode = {sc.mode}):")
        lines.extend(_format_params(sc))

    if maps:
        lines.append("")
        lines.append("statistics:")
        for amap in maps:
            lines.extend(_format_stats(f"{amap.mode} [{amap.scenario_fingerprint}]",
                                       amap))
    if comparison is not None:
        lines.append("")
        lines.append("statistics:")
        lines.extend(_format_stats("conventional", comparison.conv))
        lines.extend(_format_stats("irs-assisted", comparison.irs))
        lines.append("deltas (irs - conventional):")
        lines.append(f"  per-point: max = {comparison.delta_max:.6f}  "
                     f"min = {comparison.delta_min:.6f}  "
                     f"mean = {comparison.delta_mean:.6f}")
        lines.append(f"  edge_min delta = {comparison.edge_min_delta:+.6f}")
    if outcome is not None:
        lines.append("")
        lines.append("optimization outcome:")
        lines.append(f"  variable = {outcome.variable}")
        lines.append(f"  optimum = {outcome.optimum}")
        lines.append(f"  achieved edge_min = {outcome.achieved_edge_min:.6f}")
        lines.append(f"  iterations = {outcome.iterations}")
        lines.append(f"  final bracket = {outcome.bracket}")
        if outcome.variable == "transmit_power_w" \
                and 0 < outcome.optimum <= BASELINE_CONV_POWER_W:
            saving = energy_saving_ratio(BASELINE_CONV_POWER_W, outcome.optimum)
            lines.append(f"  energy saving vs {BASELINE_CONV_POWER_W} W baseline "
                         f"= {100.0 * saving:.2f}%")

    lines.append("")
    lines.extend(_assumption_lines(scenarios))

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def sha256_file(path: str | os.PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    scenario_paths: list[str]
    drop: dict
    out_dir: str
    files: list[dict]          # [{"path": name, "sha256": hex}, ...]
    tool_version: str
    timestamp: str


def write_manifest(command: str, scenario_paths: list[str], drop: dict,
                   out_dir: str | os.PathLike, file_names: list[str]) -> RunManifest:
    """Hash the emitted files and record the run next to them."""
    files = [{"path": name, "sha256": sha256_file(os.path.join(out_dir, name))}
             for name in file_names]
    manifest = RunManifest(
        command=command,
        scenario_paths=[str(p) for p in scenario_paths],
        drop=drop,
        out_dir=str(out_dir),
        files=files,
        tool_version=TOOL_VERSION,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest.__dict__, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def verify_manifest(manifest_path: str | os.PathLike) -> bool:
    """True when every file listed by a manifest exists and matches its hash."""
    with open(manifest_path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    out_dir = os.path.dirname(os.path.abspath(manifest_path))
    for entry in data["files"]:
        target = os.path.join(out_dir, entry["path"])
        if not os.path.isfile(target):
            return False
        if sha256_file(target) != entry["sha256"]:
            return False
    return True
