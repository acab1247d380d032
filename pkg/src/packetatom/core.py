"""Shared model types: atom, photon packet, grids, result containers.

Units are natural throughout: hbar = c = 1 and the resonance wavenumber is
scaled to 1, so time, length and inverse wavenumber share one scale.  The
atomic half-linewidth gamma and packet spectral half-width kappa are the two
small parameters; defaults reproduce the regime gamma = 0.0125,
kappa = 20 * gamma studied by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


class SolverError(RuntimeError):
    """A numerical routine failed to reach its accuracy target."""


@dataclass(frozen=True)
class NaturalUnits:
    """Marker for the unit system; both constants are 1 by construction."""

    hbar: float = 1.0
    light_speed: float = 1.0


@dataclass(frozen=True)
class AtomSpec:
    """Two-level emitter with amplitude decay rate ``gamma``.

    ``gamma`` is the half-width: the excited population decays as
    exp(-2*gamma*t).  ``resonance`` is the transition wavenumber, 1 in
    natural units.
    """

    gamma: float = 0.0125
    resonance: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ConfigError("atom gamma must be positive")
        if self.resonance <= 0:
            raise ConfigError("atom resonance must be positive")


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian single-photon packet in k-space.

    ``kappa`` is the spectral half-width, ``launch`` the initial center
    position (negative: packet starts left of the atom and moves right).
    The spatial extent is 1/kappa, the bandwidth equals kappa, and the
    packet center crosses the atom at t = -launch.
    """

    kappa: float = 0.25
    launch: float = -20.0
    carrier: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ConfigError("packet kappa must be positive")

    @property
    def length(self) -> float:
        return 1.0 / self.kappa

    @property
    def bandwidth(self) -> float:
        return self.kappa

    @property
    def arrival_time(self) -> float:
        return -self.launch


@dataclass(frozen=True)
class QuadratureConfig:
    """Domain and accuracy knobs for the k-space integrals.

    The domain must cover both resonances (+1 and the mirror at -1) with
    margin: 8 half-widths of whichever of gamma, kappa is larger.
    """

    k_min: float = -4.0
    k_max: float = 4.0
    rel_tol: float = 1e-6
    resonance_halfwidth_factor: float = 50.0
    max_refinements: int = 16

    def validate(self, atom: AtomSpec, packet: PacketSpec) -> None:
        margin = 8.0 * max(atom.gamma, packet.kappa)
        if self.k_min > -atom.resonance - margin:
            raise ConfigError(
                f"k_min={self.k_min} too high; needs at most "
                f"{-atom.resonance - margin}")
        if self.k_max < atom.resonance + margin:
            raise ConfigError(
                f"k_max={self.k_max} too low; needs at least "
                f"{atom.resonance + margin}")
        if self.rel_tol <= 0 or self.rel_tol > 1e-2:
            raise ConfigError("rel_tol must lie in (0, 1e-2]")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time samples on [t_start, t_end]."""

    t_start: float = 0.0
    t_end: float = 400.0
    n_points: int = 4001

    def __post_init__(self):
        if self.t_start < 0:
            raise ConfigError("time grid needs t_start >= 0")
        if self.t_end <= self.t_start or self.n_points < 2:
            raise ConfigError("time grid needs t_end > t_start and >= 2 points")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)


@dataclass
class KineticsTrace:
    """Population history of one scattering run.

    ``prob_excited`` is defined as 1 - prob_ground: the single-excitation
    sector is treated as exhaustive, so any doubly-excited weight is folded
    into the excited-state bookkeeping.  ``decay_rate`` is the instantaneous
    rate -(dP/dt)/P of the excited population; NaN where P has decayed
    below the resolvable floor.
    """

    times: np.ndarray
    prob_ground: np.ndarray
    prob_excited: np.ndarray
    decay_rate: np.ndarray
    metadata: dict = field(default_factory=dict)


def packet_amplitude_continuum(k, packet: PacketSpec) -> np.ndarray:
    """Normalized k-space amplitude of the packet; integral of |psi|^2 is 1."""
    k = np.asarray(k, dtype=float)
    kappa = packet.kappa
    norm = (2.0 * np.pi * kappa ** 2) ** -0.25
    envelope = np.exp(-((k - packet.carrier) ** 2) / (4.0 * kappa ** 2))
    return norm * envelope * np.exp(-1j * k * packet.launch)


def discrete_amplitude(k, packet: PacketSpec, length: float) -> np.ndarray:
    """Amplitude on the discrete mode ladder of a ring of given length.

    Samples the continuum packet with the sqrt(2*pi/length) density factor;
    the squared amplitudes then sum to 1 up to the discretization error.
    """
    return np.sqrt(2.0 * np.pi / length) * packet_amplitude_continuum(
        k, packet)


def mode_wavenumbers(n_modes: int, length: float) -> np.ndarray:
    """Symmetric ladder k = 2*pi*m/length, m = -(n-1)/2 .. (n-1)/2.

    ``n_modes`` must be odd so the ladder includes k = 0 and is mirror
    symmetric.
    """
    if n_modes < 3 or n_modes % 2 == 0:
        raise ConfigError("n_modes must be odd and at least 3")
    if length <= 0:
        raise ConfigError("length must be positive")
    m = np.arange(n_modes) - (n_modes - 1) // 2
    return 2.0 * np.pi * m / length
