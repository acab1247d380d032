"""Acceptance gate: one test per headline criterion, at the stated tolerances.

Each test checks every sub-claim of its criterion and reports all misses at
once.  Several criteria encode published reference numbers that this
implementation reproducibly lands outside of; those tests fail by design
rather than with loosened bands, and notes/decisions.md in the build notes
records the analysis for each.
"""
import math

from packetatom.core import TimeGrid
from packetatom import first_order, ww
from packetatom.semiclassical import (
    BlochParams,
    BlochState,
    PulseSpec,
    induced_shift_1d,
    integrate_bloch,
    one_photon_pulse,
)

GAMMA = 0.0125
DELTA = 0.25


def finish(failures):
    assert not failures, "\n" + "\n".join(failures)


def test_criterion_1_asymptotic_ground_excess(atom, packet, hit_trace, miss_trace):
    """Towards-launch ground probability exceeds the miss case by 0.076."""
    failures = []
    excess = hit_trace.prob_ground[-1] - miss_trace.prob_ground[-1]
    if not abs(excess - 0.076) <= 0.004:
        failures.append(f"asymptotic excess {excess:.6f} outside 0.076 +/- 0.004")
    closed = ww.induced_shift_closed_form(atom, packet)
    if not abs(closed - (-0.0760)) <= 1e-4:
        failures.append(f"closed form {closed:.6f} outside -0.0760 +/- 1e-4")
    finish(failures)


def test_criterion_2_decay_rate_peak(hit_trace):
    """Instantaneous rate peaks near arrival at about twice the free rate."""
    failures = []
    peak = ww.decay_rate_peak(hit_trace)
    if not abs(peak["time"] - 21.6) <= 0.3:
        failures.append(f"peak time {peak['time']:.3f} outside 21.6 +/- 0.3")
    ratio = peak["rate"] / (2 * GAMMA)
    if not abs(ratio - 1.94) <= 0.05:
        failures.append(f"peak/free ratio {ratio:.4f} outside 1.94 +/- 0.05")
    finish(failures)


def test_criterion_3_impulsive_closed_form():
    """One-dimensional impulsive shift at T = 20 and at full inversion."""
    failures = []
    w_T = 2 * math.exp(-2 * GAMMA * 20.0) - 1.0
    at_arrival = induced_shift_1d(w_T, GAMMA, DELTA)
    if not abs(at_arrival - (-0.027)) <= 0.001:
        failures.append(f"shift at T=20 {at_arrival:.6f} outside -0.027 +/- 0.001")
    inverted = induced_shift_1d(-1.0, GAMMA, DELTA)
    if not abs(inverted - 0.125) <= 0.001:
        failures.append(f"shift at w=-1 {inverted:.6f} outside +0.125 +/- 0.001")
    finish(failures)


def test_criterion_4_first_order_shift(shift_variants, shift_scan_values, scan_arrivals):
    """First-order excited-probability shift: value, sign reversal, late tail."""
    failures = []
    shift20 = shift_variants["derived/half"]
    if not abs(shift20 - (-0.059)) <= 0.004:
        failures.append(f"shift(20) {shift20:+.6f} outside -0.059 +/- 0.004")
    crossings = first_order.count_sign_changes(shift_scan_values)
    if crossings != 1:
        failures.append(f"{crossings} sign changes over T in [20, 130], expected exactly 1")
    shift130 = float(shift_scan_values[list(scan_arrivals).index(130.0)])
    if not (shift130 > 0 and 1e-4 <= shift130 < 1e-2):
        failures.append(f"shift(130) {shift130:+.6e} not positive of order 1e-3")
    finish(failures)


def test_criterion_5_mode_decay_rate(decay_rep):
    """Discretized-field decay rate reproduces 2 gamma within 1%."""
    failures = []
    rel = decay_rep["fitted_rate"] / 0.025 - 1.0
    if not abs(rel) <= 0.01:
        failures.append(f"fitted rate {decay_rep['fitted_rate']:.6f} off 0.025 by {rel:+.2%}")
    finish(failures)


def test_criterion_6_mode_transfer(scatter):
    """Scattering on the ground-state atom transfers 0.105 of excitation."""
    failures = []
    peak = scatter["peak_prob"]
    if not abs(peak - 0.105) <= 0.005:
        failures.append(f"transfer peak {peak:.6f} outside 0.105 +/- 0.005")
    ratio = peak / 0.125  # reported against the semiclassical transfer
    if not 0.5 <= ratio <= 1.0:
        failures.append(f"transfer/semiclassical ratio {ratio:.4f} implausible")
    finish(failures)


def test_criterion_7_spectral_broadening(spectrum_rep):
    """Interference broadens the emitted line by 11% and splits R about 1."""
    failures = []
    broadening = spectrum_rep["relative_broadening"]
    if not abs(broadening - 0.11) <= 0.02:
        failures.append(f"relative broadening {broadening:+.4f} outside 0.11 +/- 0.02")
    if not spectrum_rep["has_enhanced_region"]:
        failures.append("no region with R > 1")
    if not spectrum_rep["has_suppressed_region"]:
        failures.append("no region with R < 1")
    finish(failures)


def test_criterion_8_cgs_worked_example(cgs):
    """CGS sodium-like example reproduces the quoted magnitudes."""
    failures = []
    bands = [
        ("gamma1", cgs["gamma1"], 1.34e7, 0.005),
        ("field_peak", cgs["field_peak"], 1.18e-5, 0.01),
        ("rabi_peak", cgs["rabi_peak"], 2.56e4, 0.01),
        ("cross_section", cgs["cross_section"], 1.35e-9, 0.01),
    ]
    for name, computed, quoted, tol in bands:
        rel = computed / quoted - 1.0
        if not abs(rel) <= tol:
            failures.append(f"{name} {computed:.5e} off quoted {quoted:.3e} by {rel:+.2%}")
    if not cgs["factor_two_flagged"]:
        failures.append(f"factor-two discrepancy not flagged "
                        f"(ratio {cgs['quoted_to_focused_ratio']:.3f})")
    if not cgs["shift_ode_oracle"] > 0:
        failures.append("Bloch-equation arbiter value missing")
    finish(failures)


def test_criterion_9_property_suite(atom, packet, decay_rep, miss_trace, spectrum_rep):
    """Scaling, conservation and normalization properties."""
    failures = []

    p2 = ww.doubly_occupied_prob(atom, packet, 251.32, 200.0)
    p2_doubled = ww.doubly_occupied_prob(atom, packet, 502.64, 200.0)
    halving = p2_doubled / p2
    if not abs(halving - 0.5) <= 0.01:
        failures.append(f"pair occupation halving {halving:.4f} off 1/L scaling by "
                        f"{halving / 0.5 - 1.0:+.2%}")

    if not decay_rep["norm_drift"] <= 1e-8:
        failures.append(f"mode-equation norm drift {decay_rep['norm_drift']:.3e} > 1e-8")

    params = BlochParams.spontaneous(GAMMA)
    grid = TimeGrid(t_end=60.0, n_points=601)
    battery = [
        (BlochState(0.0, 0.0, 1.0), one_photon_pulse(atom, packet)),
        (BlochState(0.0, 0.0, -1.0), PulseSpec(2.0, 2.0, 10.0)),
        (BlochState(0.6, 0.0, 0.8), PulseSpec(0.5, 8.0, 30.0)),
        (BlochState(0.3, -0.4, 0.5), PulseSpec(1.0, 1.0, 20.0)),
    ]
    for state, pulse in battery:
        worst = integrate_bloch(params, pulse, state, grid).max_norm()
        if worst > 1.0 + 1e-6:
            failures.append(f"Bloch vector leaves the unit ball: |r| = {worst:.9f} "
                            f"(pulse {pulse.omega0_rabi}, {pulse.tau})")

    miss_final = miss_trace.prob_ground[-1]
    if not abs(miss_final - 1.0) <= 1e-3:
        failures.append(f"miss-case normalization {miss_final:.6f} misses 1 +/- 1e-3 "
                        f"(deficit {1.0 - miss_final:.2e} is the spontaneous plateau)")

    if not abs(spectrum_rep["mass_ratio"] - 1.0) <= 1e-3:
        failures.append(f"spectral mass / 2 P_ground(inf) = {spectrum_rep['mass_ratio']:.6f} "
                        f"outside 1 +/- 1e-3")

    finish(failures)
