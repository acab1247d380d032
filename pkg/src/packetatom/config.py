"""Run configuration: INI-style file, dotted overrides, validated sections.

One section per solver area.  Every key has a default, so an empty config
is a complete config; unknown sections or keys are rejected rather than
ignored.
"""

from __future__ import annotations

import configparser
import io

from pydantic import BaseModel, ConfigDict, ValidationError

from .core import (AtomSpec, ConfigError, PacketSpec, QuadratureConfig,
                   TimeGrid)
from .first_order import IterationGrid
from .mode_ode import ModeSystem


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AtomSection(_Section):
    gamma: float = 0.0125
    resonance: float = 1.0


class PacketSection(_Section):
    kappa: float = 0.25
    launch: float = -20.0
    carrier: float = 1.0


class QuadratureSection(_Section):
    k_min: float = -4.0
    k_max: float = 4.0
    rel_tol: float = 1e-6
    resonance_halfwidth_factor: float = 50.0
    max_refinements: int = 16


class TimeSection(_Section):
    t_start: float = 0.0
    t_end: float = 400.0
    n_points: int = 4001


class ModesSection(_Section):
    length: float = 251.32
    n_modes: int = 159
    t_end: float = 200.0
    dt: float = 0.1


class FirstOrderSection(_Section):
    spacing: float = 4e-3
    kernel: str = "derived"
    symmetrized: bool = False
    limit: str = "half"
    t_eval: float = 400.0
    scan_start: float = 20.0
    scan_stop: float = 130.0
    scan_step: float = 10.0


class SpectrumSection(_Section):
    core_halfwidth: float = 30.0
    core_step_factor: float = 0.1
    growth: float = 1.05
    omega_lo: float = 0.05
    omega_hi: float = 3.0


class SimulationConfig(_Section):
    """All tunables of one run, grouped by solver area."""

    atom: AtomSection = AtomSection()
    packet: PacketSection = PacketSection()
    quadrature: QuadratureSection = QuadratureSection()
    time: TimeSection = TimeSection()
    modes: ModesSection = ModesSection()
    first_order: FirstOrderSection = FirstOrderSection()
    spectrum: SpectrumSection = SpectrumSection()

    def atom_spec(self) -> AtomSpec:
        return AtomSpec(gamma=self.atom.gamma, resonance=self.atom.resonance)

    def packet_spec(self) -> PacketSpec:
        return PacketSpec(kappa=self.packet.kappa, launch=self.packet.launch,
                          carrier=self.packet.carrier)

    def quadrature_config(self) -> QuadratureConfig:
        q = self.quadrature
        return QuadratureConfig(
            k_min=q.k_min, k_max=q.k_max, rel_tol=q.rel_tol,
            resonance_halfwidth_factor=q.resonance_halfwidth_factor,
            max_refinements=q.max_refinements)

    def time_grid(self) -> TimeGrid:
        return TimeGrid(t_start=self.time.t_start, t_end=self.time.t_end,
                        n_points=self.time.n_points)

    def mode_system(self) -> ModeSystem:
        return ModeSystem(self.atom_spec(), length=self.modes.length,
                          n_modes=self.modes.n_modes)

    def iteration_grid(self) -> IterationGrid:
        q = self.quadrature
        return IterationGrid(k_min=q.k_min, k_max=q.k_max,
                             spacing=self.first_order.spacing)


def _read_ini(text: str, source: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {source}: {exc}") from exc
    return {section: dict(parser.items(section))
            for section in parser.sections()}


def _apply_override(data: dict, item: str) -> None:
    key, sep, value = item.partition("=")
    if not sep or not value:
        raise ConfigError(
            f"override {item!r} must look like section.key=value")
    section, dot, field = key.strip().partition(".")
    if not dot or not field:
        raise ConfigError(
            f"override key {key.strip()!r} must be section.key")
    data.setdefault(section, {})[field] = value.strip()


def load_config(config_text: str = None, overrides=(),
                source: str = "<config>") -> SimulationConfig:
    """Merge defaults, optional INI text, and dotted overrides.

    Raises ConfigError with the offending section/field named; pydantic
    does the value parsing, so strings from the INI layer are fine.
    """
    data = _read_ini(config_text, source) if config_text else {}
    for item in overrides or ():
        _apply_override(data, item)
    try:
        return SimulationConfig(**data)
    except ValidationError as exc:
        spots = "; ".join(
            ".".join(str(p) for p in err["loc"]) + ": " + err["msg"]
            for err in exc.errors())
        raise ConfigError(f"invalid configuration ({spots})") from exc


def load_config_file(path: str, overrides=()) -> SimulationConfig:
    try:
        with io.open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return load_config(text, overrides, source=path)
