"""User drops, per-point evaluation, grid sweeps, and mode comparison.

A sweep evaluates the association probability of every user in a drop and
aggregates max / min / mean plus the cell-edge minimum, taken over users
whose horizontal distance from the serving node is at least 90% of the
cell radius (the outer 10% band).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, propagation
from .association import association_probability
from .errors import DegenerateGeometry, MismatchedScenarios
from .model import MIN_SEPARATION_M, Point3, ValidatedScenario

EDGE_BAND_FRACTION = 0.9   # edge users sit beyond this fraction of the radius
DEFAULT_GRID = 201         # 1 m spacing on the default 200 m cell


@dataclass(frozen=True)
class UserDrop:
    """Placement of evaluation users over the square cell region.

    kind "grid": resolution x resolution lattice spanning the region
    inclusive of the edges, row-major with x varying fastest.
    kind "random": `count` i.i.d. uniform points reproducible from `seed`.
    """

    kind: str
    center_xy: tuple[float, float]
    half_side_m: float
    height_m: float
    resolution: int = 0
    count: int = 0
    seed: int = 0


@dataclass(frozen=True)
class MapStats:
    max: float
    min: float
    mean: float
    edge_min: float


@dataclass(frozen=True, eq=False)
class AssociationMap:
    """Per-user association probabilities plus summary statistics."""

    x_m: np.ndarray
    y_m: np.ndarray
    assoc_prob: np.ndarray
    stats: MapStats
    mode: str
    scenario_fingerprint: str


@dataclass(frozen=True, eq=False)
class ModeComparison:
    conv: AssociationMap
    irs: AssociationMap
    delta: np.ndarray          # irs - conv, per point
    delta_max: float
    delta_min: float
    delta_mean: float
    edge_min_delta: float


def drop_for_scenario(scenario: ValidatedScenario, grid: int | None = None,
                      random_count: int | None = None, seed: int = 0) -> UserDrop:
    """Build a drop covering the scenario's cell region at the user height."""
    cfg = scenario.config
    common = dict(center_xy=cfg.cell_center_xy, half_side_m=cfg.cell_radius_m,
                  height_m=cfg.user_height_m)
    if random_count is not None:
        return UserDrop(kind="random", count=random_count, seed=seed, **common)
    return UserDrop(kind="grid", resolution=grid if grid is not None else DEFAULT_GRID,
                    **common)


def generate_users(drop: UserDrop) -> np.ndarray:
    """User positions as an (n, 3) array of x, y, z in meters."""
    cx, cy = drop.center_xy
    h = drop.half_side_m
    if drop.kind == "grid":
        if drop.resolution < 2:
            raise ValueError("grid resolution must be >= 2")
        xs = np.linspace(cx - h, cx + h, drop.resolution)
        ys = np.linspace(cy - h, cy + h, drop.resolution)
        gx, gy = np.meshgrid(xs, ys)          # x varies fastest when raveled
        x = gx.ravel()
        y = gy.ravel()
    elif drop.kind == "random":
        if drop.count < 1:
            raise ValueError("random count must be >= 1")
        rng = np.random.default_rng(drop.seed)
        pts = rng.uniform([cx - h, cy - h], [cx + h, cy + h], size=(drop.count, 2))
        x = pts[:, 0]
        y = pts[:, 1]
    else:
        raise ValueError(f"unknown drop kind {drop.kind!r}")
    z = np.full(x.shape[0], drop.height_m)
    return np.column_stack([x, y, z])


def serving_link(scenario: ValidatedScenario, user: Point3,
                 h: float = 1.0) -> propagation.LinkResult:
    """Micro-side received power at the user, tagged with its path."""
    cfg = scenario.config
    if cfg.irs is None:
        d = propagation.distance(cfg.micro.position, user)
        p = propagation.conventional_rx_power(
            cfg.micro.transmit_power_w, scenario.wavelength_m, h, d,
            cfg.micro.path_loss_exponent)
        return propagation.LinkResult(p, "conventional_micro", (d,))
    irs = cfg.irs
    d1 = scenario.bs_irs_distance_m
    d2 = propagation.distance(irs.position, user)
    g_sc = propagation.scattering_gain(irs.element_len_x_m, irs.element_len_y_m,
                                       scenario.wavelength_m)
    p = propagation.irs_rx_power(
        cfg.micro.transmit_power_w, g_sc, scenario.gt_linear, scenario.gr_linear,
        irs.elements_tx, irs.elements_rx, irs.element_len_x_m, irs.element_len_y_m,
        scenario.wavelength_m, irs.theta_t_deg, irs.theta_r_deg,
        irs.reflection_coeff, d1, d2)
    return propagation.LinkResult(p, "irs_micro", (d1, d2))


def macro_link(scenario: ValidatedScenario, user: Point3,
               h: float = 1.0) -> propagation.LinkResult:
    cfg = scenario.config
    d = propagation.distance(cfg.macro_bs.position, user)
    p = propagation.macro_rx_power(cfg.macro_bs.transmit_power_w,
                                   scenario.wavelength_m, h, d,
                                   cfg.macro_bs.path_loss_exponent)
    return propagation.LinkResult(p, "macro", (d,))


def evaluate_point(scenario: ValidatedScenario, user: Point3,
                   substream: int = 0) -> float:
    """Association probability for one user under the scenario's fading mode.

    Monte Carlo scenarios report the mean probability over the fading
    draws of the given substream (standalone evaluations default to
    substream 0; within a sweep the substream is the point index).
    """
    if scenario.config.fading.kind == "monte_carlo":
        pts = np.array([[user.x, user.y, user.z]])
        return float(_assoc_for_points(scenario, pts, substream0=substream)[0])
    srv = serving_link(scenario, user)
    mac = macro_link(scenario, user)
    return association_probability(srv.received_power_w, mac.received_power_w,
                                   scenario.config.densities.ratio,
                                   scenario.config.macro_bs.path_loss_exponent)


def _horizontal_distances(xy_pos, x, y):
    return np.hypot(x - xy_pos.x, y - xy_pos.y)


def _assoc_for_points(scenario: ValidatedScenario, users: np.ndarray,
                      substream0: int = 0) -> np.ndarray:
    """Association probabilities for an (n, 3) user array via the kernels."""
    cfg = scenario.config
    x, y, z = users[:, 0], users[:, 1], users[:, 2]

    srv_pos = scenario.serving_position
    d_srv = np.sqrt((x - srv_pos.x) ** 2 + (y - srv_pos.y) ** 2 + (z - srv_pos.z) ** 2)
    mac_pos = cfg.macro_bs.position
    d_mac = np.sqrt((x - mac_pos.x) ** 2 + (y - mac_pos.y) ** 2 + (z - mac_pos.z) ** 2)

    for name, d in (("serving node", d_srv), ("macro BS", d_mac)):
        i = int(np.argmin(d))
        if d[i] < MIN_SEPARATION_M:
            raise DegenerateGeometry(
                f"user at ({x[i]}, {y[i]}, {z[i]}) colocated with {name}")

    lam = scenario.wavelength_m
    if cfg.irs is None:
        # unit-distance evaluation isolates the distance-free factor
        k_srv = propagation.conventional_rx_power(
            cfg.micro.transmit_power_w, lam, 1.0, 1.0, cfg.micro.path_loss_exponent)
        a_srv = cfg.micro.path_loss_exponent
        fade_serving = True
    else:
        irs = cfg.irs
        g_sc = propagation.scattering_gain(irs.element_len_x_m, irs.element_len_y_m, lam)
        k_srv = propagation.irs_rx_power(
            cfg.micro.transmit_power_w, g_sc, scenario.gt_linear, scenario.gr_linear,
            irs.elements_tx, irs.elements_rx, irs.element_len_x_m,
            irs.element_len_y_m, lam, irs.theta_t_deg, irs.theta_r_deg,
            irs.reflection_coeff, scenario.bs_irs_distance_m, 1.0)
        a_srv = 2.0
        fade_serving = False   # the cascaded model carries no fading term
    k_mac = propagation.macro_rx_power(
        cfg.macro_bs.transmit_power_w, lam, 1.0, 1.0, cfg.macro_bs.path_loss_exponent)

    dens_ratio = cfg.densities.ratio
    expo = 2.0 / cfg.macro_bs.path_loss_exponent

    if cfg.fading.kind == "monte_carlo":
        return kernels.assoc_monte_carlo(d_srv, d_mac, k_srv, a_srv, k_mac,
                                         cfg.macro_bs.path_loss_exponent,
                                         dens_ratio, expo, cfg.fading.samples,
                                         cfg.fading.seed, fade_serving, substream0)
    return kernels.assoc_deterministic(d_srv, d_mac, k_srv, a_srv, k_mac,
                                       cfg.macro_bs.path_loss_exponent,
                                       dens_ratio, expo)


def sweep(scenario: ValidatedScenario, drop: UserDrop) -> AssociationMap:
    """Evaluate every user in the drop and aggregate the statistics.

    Deterministic for fixed seeds regardless of evaluation order. The edge
    minimum is NaN when the drop has no users in the edge band.
    """
    users = generate_users(drop)
    probs = _assoc_for_points(scenario, users, substream0=0)

    x, y = users[:, 0], users[:, 1]
    d_h = _horizontal_distances(scenario.serving_position, x, y)
    edge = d_h >= EDGE_BAND_FRACTION * scenario.config.cell_radius_m
    edge_min = float(probs[edge].min()) if edge.any() else float("nan")

    stats = MapStats(max=float(probs.max()), min=float(probs.min()),
                     mean=float(probs.mean()), edge_min=edge_min)
    return AssociationMap(x_m=x, y_m=y, assoc_prob=probs, stats=stats,
                          mode=scenario.mode,
                          scenario_fingerprint=scenario.fingerprint)


def compare_modes(conv: ValidatedScenario, irs: ValidatedScenario,
                  drop: UserDrop) -> ModeComparison:
    """Sweep both scenarios over the same drop and difference the results."""
    if conv.config.carrier.frequency_hz != irs.config.carrier.frequency_hz:
        raise MismatchedScenarios("carrier frequencies differ")
    if (conv.config.cell_center_xy != irs.config.cell_center_xy
            or conv.config.cell_radius_m != irs.config.cell_radius_m):
        raise MismatchedScenarios("evaluation regions differ")

    conv_map = sweep(conv, drop)
    irs_map = sweep(irs, drop)
    delta = irs_map.assoc_prob - conv_map.assoc_prob
    edge_delta = irs_map.stats.edge_min - conv_map.stats.edge_min
    return ModeComparison(conv=conv_map, irs=irs_map, delta=delta,
                          delta_max=float(delta.max()), delta_min=float(delta.min()),
                          delta_mean=float(delta.mean()),
                          edge_min_delta=float(edge_delta))
