"""Inverse problems on the cell-edge association target.

Both searches exploit monotonicity of the edge minimum: in the micro
transmit power (bisection) and in the joint element count (integer binary
search, square panel, M = N). Objectives are always evaluated under
deterministic fading; Monte Carlo noise would break the monotone
assumption. Re-evaluate the optimum under Monte Carlo afterwards if the
fading spread matters.
"""

from __future__ import annotations

import dataclasses
import math

from .errors import BracketError, Infeasible, InvalidConfig, InvalidPower
from .model import FadingMode, ValidatedScenario, validate
from .sweep import UserDrop, sweep


@dataclasses.dataclass(frozen=True)
class OptimizationOutcome:
    variable: str              # "transmit_power_w" | "element_count"
    optimum: float | int
    achieved_edge_min: float
    iterations: int
    bracket: tuple


def _deterministic_twin(scenario: ValidatedScenario) -> ValidatedScenario:
    cfg = scenario.config
    if cfg.fading.kind == "deterministic":
        return scenario
    return validate(dataclasses.replace(cfg, fading=FadingMode("deterministic")))


def _edge_min(scenario: ValidatedScenario, drop: UserDrop) -> float:
    value = sweep(scenario, drop).stats.edge_min
    if math.isnan(value):
        raise ValueError("drop has no users in the edge band; edge objective undefined")
    return value


def edge_min_at_power(scenario: ValidatedScenario, drop: UserDrop,
                      p_t_w: float) -> float:
    """Edge minimum with the micro transmit power replaced by p_t_w."""
    cfg = scenario.config
    micro = dataclasses.replace(cfg.micro, transmit_power_w=p_t_w)
    return _edge_min(validate(dataclasses.replace(cfg, micro=micro)), drop)


def edge_min_at_elements(scenario: ValidatedScenario, drop: UserDrop,
                         n: int) -> float:
    """Edge minimum with the panel resized to n x n elements."""
    cfg = scenario.config
    if cfg.irs is None:
        raise InvalidConfig("irs", "element search requires an IRS-assisted scenario")
    irs = dataclasses.replace(cfg.irs, elements_tx=n, elements_rx=n)
    return _edge_min(validate(dataclasses.replace(cfg, irs=irs)), drop)


def min_power_for_edge_target(scenario: ValidatedScenario, drop: UserDrop,
                              target: float, p_lo: float, p_hi: float,
                              tol_w: float) -> OptimizationOutcome:
    """Least micro transmit power whose edge minimum reaches the target.

    Bisection over [p_lo, p_hi]; requires edge_min(p_lo) < target <=
    edge_min(p_hi), else BracketError with both endpoint values. The
    returned power satisfies edge_min >= target with bracket width <= tol_w.
    """
    if not (0.0 < target < 1.0):
        raise ValueError(f"target must be in (0, 1), got {target}")
    if not (p_lo > 0.0 and p_hi > p_lo):
        raise InvalidPower(f"need 0 < p_lo < p_hi, got [{p_lo}, {p_hi}]")
    if not tol_w > 0.0:
        raise ValueError(f"tol_w must be > 0, got {tol_w}")

    det = _deterministic_twin(scenario)
    f_lo = edge_min_at_power(det, drop, p_lo)
    f_hi = edge_min_at_power(det, drop, p_hi)
    if not (f_lo < target <= f_hi):
        raise BracketError(p_lo, p_hi, f_lo, f_hi, target)

    lo, hi = p_lo, p_hi
    achieved = f_hi
    iters = 0
    while hi - lo > tol_w:
        mid = 0.5 * (lo + hi)
        f_mid = edge_min_at_power(det, drop, mid)
        iters += 1
        if f_mid >= target:
            hi, achieved = mid, f_mid
        else:
            lo = mid
    return OptimizationOutcome(variable="transmit_power_w", optimum=hi,
                               achieved_edge_min=achieved, iterations=iters,
                               bracket=(lo, hi))


def min_elements_for_edge_target(scenario: ValidatedScenario, drop: UserDrop,
                                 target: float, n_max: int) -> OptimizationOutcome:
    """Least joint element count (M = N) whose edge minimum reaches the target.

    Integer binary search over [1, n_max]; raises Infeasible with the
    achieved value when even n_max falls short.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    det = _deterministic_twin(scenario)

    f_max = edge_min_at_elements(det, drop, n_max)
    if f_max < target:
        raise Infeasible(n_max, f_max, target)

    f_one = edge_min_at_elements(det, drop, 1)
    if f_one >= target:
        return OptimizationOutcome(variable="element_count", optimum=1,
                                   achieved_edge_min=f_one, iterations=0,
                                   bracket=(1, 1))

    lo, hi = 1, n_max          # invariant: f(lo) < target <= f(hi)
    achieved = f_max
    iters = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        f_mid = edge_min_at_elements(det, drop, mid)
        iters += 1
        if f_mid >= target:
            hi, achieved = mid, f_mid
        else:
            lo = mid
    return OptimizationOutcome(variable="element_count", optimum=hi,
                               achieved_edge_min=achieved, iterations=iters,
                               bracket=(lo, hi))


def energy_saving_ratio(conv_power_w: float, irs_power_w: float) -> float:
    """Fractional transmit-power saving, 1 - irs/conv.

    Compares nominal transmit powers only; panel control overhead is not
    part of the accounting.
    """
    if not conv_power_w > 0.0:
        raise InvalidPower(f"conventional power must be > 0, got {conv_power_w}")
    if not (0.0 < irs_power_w <= conv_power_w):
        raise InvalidPower(
            f"need 0 < irs_power <= conv_power, got {irs_power_w} vs {conv_power_w}")
    return 1.0 - irs_power_w / conv_power_w
