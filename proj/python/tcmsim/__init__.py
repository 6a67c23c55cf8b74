"""Two-atom multimode Tavis-Cummings simulator."""

from ._core import (
    Channel,
    ConfigurationError,
    Convention,
    DomainError,
    Field,
    FormulaSet,
    NumericalFailure,
    TruncationWindow,
    UnsupportedConfiguration,
    collapse_windows,
    concurrence,
    eof,
    mode_sweep,
    oscillation_rate,
    reduced_density,
    reduced_density_exact,
    revival_peaks,
    simulate,
    simulate_exact,
    uniform_grid,
)

__all__ = [
    "Channel",
    "ConfigurationError",
    "Convention",
    "DomainError",
    "Field",
    "FormulaSet",
    "NumericalFailure",
    "TruncationWindow",
    "UnsupportedConfiguration",
    "collapse_windows",
    "concurrence",
    "eof",
    "mode_sweep",
    "oscillation_rate",
    "reduced_density",
    "reduced_density_exact",
    "revival_peaks",
    "simulate",
    "simulate_exact",
    "uniform_grid",
]
