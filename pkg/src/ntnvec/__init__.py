"""Optimal task offloading for UAV/HAP-assisted vehicular edge computing."""
from .errors import (AmbiguityError, ConfigError, DomainError, InstabilityError, NtnVecError,
                     ParseError, SolverError, ValidationError)
from .optimizer import Binding, OffloadSolution, eta_max, solve, solve_hybrid, solve_standalone
from .scenario import (Config, Kind, PlatformProfile, Scenario, Scheme, SweepAxis, load_config,
                       load_scenario)
from .sweep import SweepRecord, SweepSpec, run_sweep

__version__ = "0.1.0"
