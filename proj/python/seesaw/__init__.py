"""Two-cavity torsional optomechanics simulator."""

from ._seesaw import (
    ConfigError,
    NumericalError,
    RangeError,
    ValidationError,
    backaction_rates,
    derive_quantities,
    embedded_config,
    experiment_names,
    fft_peaks,
    find_limit_cycle,
    find_threshold,
    git_blob_sha1,
    preset_names,
    resolve_config,
    run_experiment,
    shuttle_map,
    simulate,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "RangeError",
    "ValidationError",
    "backaction_rates",
    "derive_quantities",
    "embedded_config",
    "experiment_names",
    "fft_peaks",
    "find_limit_cycle",
    "find_threshold",
    "git_blob_sha1",
    "preset_names",
    "resolve_config",
    "run_experiment",
    "shuttle_map",
    "simulate",
]
