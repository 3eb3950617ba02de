"""Two-tier micro-cell association simulator with optional reflecting panel.

Computes downlink received power for conventional and panel-assisted micro
base stations, the resulting probability of associating with the micro
tier versus the macro tier, grid/random user sweeps with cell-edge
statistics, and the inverse problems of minimal transmit power or element
count meeting an edge-coverage target.
"""

from .association import association_probability
from .backend import active_backend
from .errors import (BracketError, DegenerateGeometry, Infeasible,
                     InvalidAngle, InvalidConfig, InvalidPower,
                     MismatchedScenarios, ParseError, SimError, UnknownKey,
                     UnsupportedCarrier)
from .config import load_config, save_config
from .model import (CarrierSpec, FadingMode, IrsConfig, MacroBsConfig,
                    MicroBsConfig, Point3, ScenarioConfig, TierDensities,
                    ValidatedScenario, db_to_linear, default_scenario,
                    fingerprint, validate)
from .optimize import (OptimizationOutcome, energy_saving_ratio,
                       min_elements_for_edge_target, min_power_for_edge_target)
from .propagation import (LinkResult, conventional_rx_power, distance,
                          fading_from_uniform, irs_rx_power, macro_rx_power,
                          sample_fading, scattering_gain)
from .report import emit_map_csv, emit_summary, verify_manifest, write_manifest
from .sweep import (AssociationMap, ModeComparison, UserDrop, compare_modes,
                    drop_for_scenario, evaluate_point, generate_users, sweep)

__version__ = "0.1.0"
