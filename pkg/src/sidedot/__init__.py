"""Spin-qubit readout via resonant tunneling through side-coupled quantum dots.

A numpy/scipy simulator for a three-dot readout unit: a current-carrying
center dot between source and drain, dressed by side-coupled qubit dots
whose singlet levels shift with the qubit spin state.  The package computes
spin-resolved I-V characteristics for the four joint-qubit-state cases,
solves the dot device in series with a transistor compact model, and
evaluates measurement time, backaction decoherence time and the achievable
number of measurements.
"""

from ._version import __version__
from .constants import CONSTANTS, G_FACTOR, PhysicalConstants
from .device import (
    ALL_CASES,
    DEFAULT_CASE_TABLE,
    MEASUREMENT_CASES,
    BiasPoint,
    CaseConfig,
    DeviceParams,
    MeasurementCase,
    SideDot,
    SpinChannel,
    bias_geometry,
    case_config,
    end_of_peak_bias,
    field_from_zeeman,
    onset_bias,
    zeeman_from_field,
)
from .errors import (
    BracketError,
    ConfigError,
    ConvergenceError,
    QuadratureError,
    SidedotError,
    SolverError,
    SweepError,
)
from .fet import (
    CircuitSolution,
    FetParams,
    fet_current,
    solve_series,
    vout_curve,
    vout_spread,
)
from .harness import (
    ExperimentSpec,
    SweepSpec,
    apply_overrides,
    load_config,
    merge_overrides,
    parse_config_file,
    run_figure,
    run_sweep,
)
from .metrics import (
    DEFAULT_SINGLET_OCCUPANCY,
    T_DEC_CAP_S,
    DecoherenceInput,
    MetricsRecord,
    decoherence_input,
    decoherence_rate,
    delta_current,
    measurement_count,
    metrics_sweep,
    shot_noise,
    t_dec,
    t_meas,
)
from .transport import (
    IvPoint,
    SpinCurrent,
    fermi,
    iv_curve,
    side_self_energy,
    spin_current,
    total_current,
    transmission,
)

__all__ = [name for name in dir() if not name.startswith("_")]
