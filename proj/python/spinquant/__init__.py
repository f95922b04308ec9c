"""Monte Carlo simulation of spin reorientation in a magnetic field.

Coherent precession builds a time-dependent density of states; inelastic
scattering sampled against it steers an initially isotropic spin ensemble
toward the two field-axis eigendirections.  All quantities are dimensionless:
hbar = omega = 1, times are tau = omega * t.
"""

from ._core import (  # noqa: F401
    ConfigError,
    CoherencePoint,
    EnsembleSnapshot,
    NumericalError,
    Path,
    PathEvent,
    RateTable,
    RngStream,
    RunConfig,
    RunManifest,
    SpinDirection,
    Spinor,
    broadened_delta,
    build_rate_table,
    coherence_series,
    coherence_term,
    differential_rate,
    direction_at,
    dos_rho_bar,
    energy,
    load_config_file,
    make_spinor,
    mixedness_check,
    precess,
    run_experiment,
    run_paths,
    run_sweep,
    sample_final_direction,
    sample_flight_time,
    sample_initial,
    simulate_path,
    snapshot,
    total_rate,
    transition_dos,
    validate_config,
)
from ._core import __version__  # noqa: F401
