"""Micro-tier user-association probability.

The probability a user attaches to the serving micro cell rather than the
macro tier, given the two received powers and the tier density ratio:

    (1 + ratio * (p_macro / p_micro)^(2 / alpha_macro))^-1

The same expression serves the conventional and the panel-assisted micro
cell; only the supplied micro-side power differs.
"""

import math

from .errors import InvalidPower


def association_probability(p_r_micro: float, p_r_macro: float,
                            density_ratio: float, alpha_macro: float) -> float:
    """Probability the user associates with the micro tier.

    p_r_macro = 0 returns exactly 1.0: the well-defined isolated-cell
    limit, useful in what-if runs.
    """
    if not (p_r_micro > 0.0 and math.isfinite(p_r_micro)):
        raise InvalidPower(f"micro received power must be finite and > 0, got {p_r_micro}")
    if not (p_r_macro >= 0.0 and math.isfinite(p_r_macro)):
        raise InvalidPower(f"macro received power must be finite and >= 0, got {p_r_macro}")
    if p_r_macro == 0.0:
        return 1.0
    return 1.0 / (1.0 + density_ratio * (p_r_macro / p_r_micro) ** (2.0 / alpha_macro))
