"""Stability analysis and simulation of buffered slotted Aloha with K-exponential backoff."""

__version__ = "0.1.0"

from .equilibrium import (
    INV_E,
    UNBOUNDED,
    BackoffConfig,
    EquilibriumPoints,
    PhaseDistribution,
    attempt_rate,
    desired_point_series,
    equilibrium_points,
    iterate_saturated,
    iterate_unsaturated,
    offered_load,
    phase_distribution,
    saturated_throughput,
    saturation_gain,
    success_probability_finite_n,
    throughput_of,
    undesired_point,
)
from .errors import (
    DivergedRunError,
    LambertWDomainError,
    NoEquilibriumError,
    NoStationaryDistributionError,
    RootBracketError,
    SaturationOnset,
    UnderflowClampWarning,
)
from .lambertw import lambert_w
from .regions import (
    Interval,
    Stability,
    StabilityReport,
    absolute_stable_region,
    classify,
    complete_stable_region,
    max_stable_throughput,
    max_throughput_approx,
    q_lower,
    q_lower_approx,
    q_upper,
    quasi_stable_region,
    table_one,
)
from .simulator import SimConfig, SimStats, Trajectory, empirical_phase_distribution, run, trajectory_probe

__all__ = [
    "__version__",
    "INV_E",
    "UNBOUNDED",
    "BackoffConfig",
    "EquilibriumPoints",
    "PhaseDistribution",
    "attempt_rate",
    "desired_point_series",
    "equilibrium_points",
    "iterate_saturated",
    "iterate_unsaturated",
    "offered_load",
    "phase_distribution",
    "saturated_throughput",
    "saturation_gain",
    "success_probability_finite_n",
    "throughput_of",
    "undesired_point",
    "DivergedRunError",
    "LambertWDomainError",
    "NoEquilibriumError",
    "NoStationaryDistributionError",
    "RootBracketError",
    "SaturationOnset",
    "UnderflowClampWarning",
    "Interval",
    "Stability",
    "StabilityReport",
    "absolute_stable_region",
    "classify",
    "complete_stable_region",
    "max_stable_throughput",
    "max_throughput_approx",
    "q_lower",
    "q_lower_approx",
    "q_upper",
    "quasi_stable_region",
    "table_one",
    "lambert_w",
    "SimConfig",
    "SimStats",
    "Trajectory",
    "empirical_phase_distribution",
    "run",
    "trajectory_probe",
]
