"""Core types: validation, packet amplitudes, grids."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from packetatom.core import (
    AtomSpec,
    ConfigError,
    NaturalUnits,
    PacketSpec,
    QuadratureConfig,
    TimeGrid,
    discrete_amplitude,
    mode_wavenumbers,
    packet_amplitude_continuum,
)


def test_natural_units_are_unity():
    units = NaturalUnits()
    assert units.hbar == 1.0
    assert units.light_speed == 1.0


def test_atom_defaults():
    atom = AtomSpec()
    assert atom.gamma == 0.0125
    assert atom.resonance == 1.0


@pytest.mark.parametrize("kwargs", [{"gamma": 0.0}, {"gamma": -1.0}, {"resonance": 0.0}, {"resonance": -2.0}])
def test_atom_validation(kwargs):
    with pytest.raises(ConfigError):
        AtomSpec(**kwargs)


def test_packet_defaults_and_derived():
    packet = PacketSpec()
    assert packet.kappa == 0.25
    assert packet.launch == -20.0
    assert packet.carrier == 1.0
    assert packet.length == 4.0
    assert packet.bandwidth == 0.25
    assert packet.arrival_time == 20.0


@pytest.mark.parametrize("kappa", [0.0, -0.25])
def test_packet_validation(kappa):
    with pytest.raises(ConfigError):
        PacketSpec(kappa=kappa)


def test_arrival_time_is_negated_launch():
    for launch in (-20.0, 0.0, 13.5):
        assert PacketSpec(launch=launch).arrival_time == -launch


def test_packet_amplitude_peak_value():
    packet = PacketSpec(launch=0.0)
    peak = complex(packet_amplitude_continuum(np.array([1.0]), packet)[0])
    assert peak.imag == 0.0
    assert peak.real == pytest.approx((2.0 * math.pi * 0.25**2) ** -0.25, rel=1e-14)
    ks = np.linspace(-4.0, 4.0, 4001)
    mods = np.abs(packet_amplitude_continuum(ks, packet))
    assert mods.max() == pytest.approx(peak.real, rel=1e-6)
    assert abs(ks[mods.argmax()] - 1.0) < 1e-2


def test_packet_amplitude_width():
    # |psi| drops by e^{-1} one Gaussian width (2 kappa in variance terms) away
    packet = PacketSpec()
    k = np.array([1.0, 1.0 + 2 * packet.kappa, 1.0 - 2 * packet.kappa])
    mods = np.abs(packet_amplitude_continuum(k, packet))
    assert mods[1] / mods[0] == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert mods[2] / mods[0] == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_packet_amplitude_normalized():
    packet = PacketSpec()
    total, err = quad(lambda k: abs(packet_amplitude_continuum(np.array([k]), packet)[0]) ** 2,
                      -11.0, 13.0, limit=200)
    assert err < 1e-10
    assert total == pytest.approx(1.0, abs=1e-8)


def test_launch_affects_phase_only():
    ks = np.linspace(-4.0, 4.0, 101)
    at_rest = packet_amplitude_continuum(ks, PacketSpec(launch=0.0))
    launched = packet_amplitude_continuum(ks, PacketSpec(launch=-20.0))
    np.testing.assert_allclose(np.abs(launched), np.abs(at_rest), rtol=1e-14)
    assert np.max(np.abs(launched - at_rest)) > 0.1


@given(kappa=st.floats(min_value=0.05, max_value=1.0))
def test_packet_norm_property(kappa):
    packet = PacketSpec(kappa=kappa)
    total, _ = quad(lambda k: abs(packet_amplitude_continuum(np.array([k]), packet)[0]) ** 2,
                    1.0 - 12.0 * kappa, 1.0 + 12.0 * kappa, limit=200)
    assert total == pytest.approx(1.0, abs=1e-7)


def test_discrete_amplitude_sums_to_unit_norm():
    packet = PacketSpec()
    length = 251.32
    ks = mode_wavenumbers(159, length)
    phi = discrete_amplitude(ks, packet, length)
    total = float(np.sum(np.abs(phi) ** 2))
    assert total == pytest.approx(1.0, abs=1e-3)
    assert 1.0 - total == pytest.approx(3.877e-5, abs=5e-6)  # truncation loss of the 159-mode window


def test_discrete_amplitude_scales_inversely_with_length():
    packet = PacketSpec()
    k = np.array([1.0, 1.1])
    base = np.abs(discrete_amplitude(k, packet, 251.32)) ** 2
    doubled = np.abs(discrete_amplitude(k, packet, 502.64)) ** 2
    np.testing.assert_allclose(doubled, base / 2.0, rtol=1e-12)


def test_discrete_amplitude_matches_continuum_density():
    # |phi|^2 * L / (2 pi) equals |psi|^2 regardless of L
    packet = PacketSpec()
    k = np.linspace(0.0, 2.0, 21)
    target = np.abs(packet_amplitude_continuum(k, packet)) ** 2
    for length in (251.32, 502.64, 1005.28):
        got = np.abs(discrete_amplitude(k, packet, length)) ** 2 * length / (2.0 * math.pi)
        np.testing.assert_allclose(got, target, rtol=1e-13)


def test_time_grid_validation():
    with pytest.raises(ConfigError):
        TimeGrid(t_start=-1.0)
    with pytest.raises(ConfigError):
        TimeGrid(t_start=10.0, t_end=10.0)
    with pytest.raises(ConfigError):
        TimeGrid(n_points=1)


def test_time_grid_values():
    grid = TimeGrid(t_end=400.0, n_points=4001)
    times = grid.times
    assert times[0] == 0.0
    assert times[-1] == 400.0
    assert len(times) == 4001
    assert grid.step == pytest.approx(0.1)
    assert np.all(np.diff(times) > 0)


def test_quadrature_config_validation():
    atom, packet = AtomSpec(), PacketSpec()
    QuadratureConfig().validate(atom, packet)
    with pytest.raises(ConfigError):
        QuadratureConfig(k_max=1.5).validate(atom, packet)
    with pytest.raises(ConfigError):
        QuadratureConfig(k_min=-1.5).validate(atom, packet)
    with pytest.raises(ConfigError):
        QuadratureConfig(rel_tol=0.0).validate(atom, packet)
    with pytest.raises(ConfigError):
        QuadratureConfig(rel_tol=0.5).validate(atom, packet)


def test_mode_wavenumbers_ladder():
    ks = mode_wavenumbers(159, 251.32)
    assert len(ks) == 159
    np.testing.assert_allclose(ks, -ks[::-1], atol=1e-15)
    np.testing.assert_allclose(np.diff(ks), 2.0 * math.pi / 251.32, rtol=1e-13)
    assert ks[-1] == pytest.approx(2.0 * math.pi * 79 / 251.32, rel=1e-14)


def test_mode_wavenumbers_validation():
    with pytest.raises(ConfigError):
        mode_wavenumbers(158, 251.32)
    with pytest.raises(ConfigError):
        mode_wavenumbers(1, 251.32)
    with pytest.raises(ConfigError):
        mode_wavenumbers(159, 0.0)
