"""Optical Bloch equations driven by a pulse worth one photon.

The quantum scattering results have a semiclassical shadow: replace the
packet by a classical Gaussian field pulse whose Rabi envelope carries the
photon's energy, then follow the Bloch vector.  This module integrates the
full three-component system, provides the impulsive closed forms for the
population shift it induces, and evaluates the CGS worked example with all
its internal cross-checks.

Conventions: the longitudinal rate gamma1 relaxes the population difference
w toward w_eq, the transverse rate gamma2 damps u and v, and spontaneous
emission corresponds to gamma2 = gamma1/2 = gamma with w_eq = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .core import AtomSpec, ConfigError, PacketSpec, SolverError, TimeGrid


@dataclass(frozen=True)
class BlochParams:
    gamma1: float
    gamma2: float
    detuning: float = 0.0
    w_eq: float = -1.0

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ConfigError("relaxation rates must be nonnegative")

    @classmethod
    def spontaneous(cls, gamma: float, detuning: float = 0.0):
        """Resonant spontaneous-emission specialization."""
        return cls(gamma1=2.0 * gamma, gamma2=gamma, detuning=detuning,
                   w_eq=-1.0)


@dataclass(frozen=True)
class BlochState:
    u: float = 0.0
    v: float = 0.0
    w: float = -1.0

    def norm(self) -> float:
        return math.sqrt(self.u ** 2 + self.v ** 2 + self.w ** 2)


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian Rabi pulse Omega0 * exp(-(t-T)^2 / (4 tau^2))."""

    omega0_rabi: float
    tau: float
    t_arrival: float = 0.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ConfigError("pulse tau must be positive")
        if self.omega0_rabi < 0:
            raise ConfigError("peak Rabi frequency must be nonnegative")

    @property
    def area(self) -> float:
        """Time integral of the envelope: 2 sqrt(pi) Omega0 tau."""
        return 2.0 * math.sqrt(math.pi) * self.omega0_rabi * self.tau


@dataclass
class BlochTrajectory:
    times: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def final(self) -> BlochState:
        return BlochState(float(self.u[-1]), float(self.v[-1]),
                          float(self.w[-1]))

    def max_norm(self) -> float:
        return float(np.sqrt(self.u ** 2 + self.v ** 2
                             + self.w ** 2).max())


def rabi_envelope(t, pulse: PulseSpec):
    t = np.asarray(t, dtype=float)
    arg = (t - pulse.t_arrival) / (2.0 * pulse.tau)
    return pulse.omega0_rabi * np.exp(-arg * arg)


def integrate_bloch(params: BlochParams, pulse: PulseSpec,
                    initial: BlochState, grid: TimeGrid,
                    rtol: float = 1e-9, atol: float = 1e-12
                    ) -> BlochTrajectory:
    """Solve the three-component system on the grid.

    With zero detuning and u(0)=0 the u component stays identically zero
    and the system reduces to the (v, w) pair.
    """
    g1, g2, det, weq = (params.gamma1, params.gamma2, params.detuning,
                        params.w_eq)

    def rhs(t, y):
        u, v, w = y
        om = rabi_envelope(t, pulse)
        return (-g2 * u - det * v,
                -g2 * v + det * u + om * w,
                -g1 * (w - weq) - om * v)

    times = grid.times
    sol = solve_ivp(rhs, (times[0], times[-1]),
                    (initial.u, initial.v, initial.w),
                    t_eval=times, method="RK45", rtol=rtol, atol=atol)
    if not sol.success:
        raise SolverError(f"Bloch integration failed: {sol.message}")
    return BlochTrajectory(times=sol.t, u=sol.y[0], v=sol.y[1], w=sol.y[2])


def free_decay_w(t, w0: float, gamma1: float, w_eq: float = -1.0):
    """Closed-form population difference with the field off."""
    t = np.asarray(t, dtype=float)
    return w_eq + (w0 - w_eq) * np.exp(-gamma1 * t)


def induced_shift_impulsive(w_T: float, pulse: PulseSpec) -> dict:
    """Population shift of a short pulse hitting inversion w_T.

    The area-squared route gives dP = -pi (Omega0 tau)^2 w_T; the
    alternative closed form carries pi/2 instead.  Both are returned; they
    differ by an irreducible factor 2 (see the shift comparison table) and
    the Bloch ODE sides with the area-squared route.
    """
    x = (pulse.omega0_rabi * pulse.tau) ** 2 * w_T
    return {
        "area_squared": -math.pi * x,
        "half_area": -math.pi / 2.0 * x,
        "delta_w": -2.0 * math.pi * x,
    }


def induced_shift_1d(w_T: float, gamma: float, delta: float) -> float:
    """Probability shift for the 1D packet of spectral width delta."""
    if delta <= 0:
        raise ConfigError("delta must be positive")
    return -math.sqrt(2.0 * math.pi) * (gamma / delta) * w_T


def induced_shift_3d(w_T: float, sigma_ratio: float,
                     rate_ratio: float) -> float:
    """3D focused-beam form: -sqrt(pi/8) (sigma0/S) (gamma/delta) w_T."""
    if sigma_ratio <= 0 or rate_ratio <= 0:
        raise ConfigError("ratios must be positive")
    return -math.sqrt(math.pi / 8.0) * sigma_ratio * rate_ratio * w_T


def one_photon_pulse(atom: AtomSpec, packet: PacketSpec,
                     arrival: float = None) -> PulseSpec:
    """Classical pulse equivalent to the single-photon packet.

    Duration is the packet's inverse bandwidth; the peak Rabi frequency is
    fixed so the impulsive shift reproduces the 1D closed form.
    """
    delta = packet.bandwidth
    om0 = (2.0 / math.pi) ** 0.25 * math.sqrt(atom.gamma * delta)
    T = packet.arrival_time if arrival is None else arrival
    return PulseSpec(omega0_rabi=om0, tau=1.0 / delta, t_arrival=T)


def bloch_shift_oracle(gamma_tau: float, omega_tau: float, w_start: float,
                       pulse_center: float = 8.0, margin: float = 8.0,
                       rtol: float = 1e-11, atol: float = 1e-14) -> dict:
    """Direct ODE measurement of the pulse-induced shift, in pulse units.

    Time is measured in units of tau.  Integrates the resonant system with
    and without the pulse from the same start, takes half the population
    difference gap at the end, and removes the post-pulse free decay by
    back-propagating to the pulse center (exact once the envelope is off).
    """
    def run(om0):
        def rhs(t, y):
            v, w = y
            om = om0 * math.exp(-(t - pulse_center) ** 2 / 4.0)
            return (-gamma_tau * v + om * w,
                    -2.0 * gamma_tau * (w + 1.0) - om * v)
        t_end = pulse_center + margin
        sol = solve_ivp(rhs, (0.0, t_end), (0.0, w_start), method="RK45",
                        rtol=rtol, atol=atol)
        if not sol.success:
            raise SolverError(f"shift oracle failed: {sol.message}")
        return sol.y[1, -1], t_end

    w_with, t_end = run(omega_tau)
    w_free, _ = run(0.0)
    raw = (w_with - w_free) / 2.0
    shift = raw * math.exp(2.0 * gamma_tau * (t_end - pulse_center))
    return {
        "shift": shift,
        "raw_gap": raw,
        "w_at_arrival": free_decay_w(pulse_center, w_start, 2.0 * gamma_tau),
    }


CGS_HBAR = 1.0545718e-27
CGS_C = 2.99792458e10


@dataclass(frozen=True)
class PhysicalExample:
    """CGS inputs of the worked estimate: an atom driven by a nanosecond
    single-photon pulse focused to a small area."""

    omega0_cgs: float = 3.54e15
    dipole_cgs: float = 2.42e-18
    tau_s: float = 1e-9
    area_cm2: float = 5e-3

    def __post_init__(self):
        for name in ("omega0_cgs", "dipole_cgs", "tau_s", "area_cm2"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")


# Published values the worked example is checked against.
QUOTED_GAMMA1 = 1.34e7
QUOTED_FIELD = 1.18e-5
QUOTED_RABI = 2.56e4
QUOTED_CROSS_SECTION = 1.35e-9
QUOTED_SHIFT = 2.15e-9
QUOTED_HALF_GAMMA1 = 6.70e6
QUOTED_DELTA = 1e9


def cgs_report(example: PhysicalExample = None) -> dict:
    """Every derived quantity of the CGS worked example, plus the
    three-way shift comparison.

    The quoted max shift exceeds the focused-beam formula evaluated at the
    quoted inputs by a factor near 1.9; the report computes that ratio,
    flags it, and includes the Bloch-ODE arbiter value, which lands on the
    area-squared closed form instead.
    """
    ex = example or PhysicalExample()
    w0, d, tau, S = ex.omega0_cgs, ex.dipole_cgs, ex.tau_s, ex.area_cm2

    gamma1 = 4.0 * d * d * w0 ** 3 / (3.0 * CGS_HBAR * CGS_C ** 3)
    wavelength = 2.0 * math.pi * CGS_C / w0
    cross_section = 3.0 / (2.0 * math.pi) * wavelength ** 2
    pulse_length = CGS_C * tau
    field_peak = (8.0 * math.pi) ** 0.25 * math.sqrt(
        CGS_HBAR * w0 / (pulse_length * S))
    rabi_peak = d * field_peak / CGS_HBAR

    gamma_tau = gamma1 / 2.0 * tau
    omega_tau = rabi_peak * tau
    # shift magnitudes for a fully inverted atom (w_T = 1)
    area_sq = math.pi * omega_tau ** 2
    half_area = area_sq / 2.0
    focused = -induced_shift_3d(1.0, QUOTED_CROSS_SECTION / S,
                                QUOTED_HALF_GAMMA1 / QUOTED_DELTA)
    ode = abs(bloch_shift_oracle(gamma_tau, omega_tau, -1.0,
                                 pulse_center=12.0)["shift"])
    ratio = QUOTED_SHIFT / focused

    return {
        "gamma1": gamma1,
        "wavelength": wavelength,
        "cross_section": cross_section,
        "pulse_length": pulse_length,
        "field_peak": field_peak,
        "rabi_peak": rabi_peak,
        "gamma_tau": gamma_tau,
        "omega_tau": omega_tau,
        "shift_area_squared": area_sq,
        "shift_half_area": half_area,
        "shift_focused_form": focused,
        "shift_ode_oracle": ode,
        "shift_quoted": QUOTED_SHIFT,
        "quoted_to_focused_ratio": ratio,
        "factor_two_flagged": 1.7 <= ratio <= 2.1,
        "quoted": {
            "gamma1": QUOTED_GAMMA1,
            "field_peak": QUOTED_FIELD,
            "rabi_peak": QUOTED_RABI,
            "cross_section": QUOTED_CROSS_SECTION,
        },
    }
