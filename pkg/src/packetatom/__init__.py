"""Kinetics and emission spectra of a two-level atom hit by a single-photon
Gaussian wave packet, with semiclassical and discretized-field companions."""

from .core import (AtomSpec, ConfigError, KineticsTrace, NaturalUnits,
                   PacketSpec, QuadratureConfig, SolverError, TimeGrid)

__all__ = [
    "AtomSpec", "ConfigError", "KineticsTrace", "NaturalUnits",
    "PacketSpec", "QuadratureConfig", "SolverError", "TimeGrid",
]

__version__ = "0.1.0"
