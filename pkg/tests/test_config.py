"""INI configuration layer and dotted overrides."""
import pytest

from packetatom.core import ConfigError
from packetatom.config import SimulationConfig, load_config, load_config_file


def test_defaults():
    cfg = load_config()
    assert cfg.atom.gamma == 0.0125
    assert cfg.atom.resonance == 1.0
    assert cfg.packet.kappa == 0.25
    assert cfg.packet.launch == -20.0
    assert cfg.quadrature.rel_tol == 1e-6
    assert cfg.time.t_end == 400.0
    assert cfg.time.n_points == 4001
    assert cfg.modes.length == 251.32
    assert cfg.modes.n_modes == 159
    assert cfg.first_order.kernel == "derived"
    assert cfg.first_order.limit == "half"
    assert cfg.first_order.symmetrized is False
    assert cfg.spectrum.omega_lo == 0.05
    assert cfg.spectrum.omega_hi == 3.0


def test_ini_text_overrides_defaults():
    cfg = load_config("[atom]\ngamma = 0.02\n\n[time]\nn_points = 101\n")
    assert cfg.atom.gamma == 0.02
    assert cfg.time.n_points == 101
    assert cfg.packet.kappa == 0.25  # untouched section keeps defaults


def test_dotted_overrides_win():
    cfg = load_config("[atom]\ngamma = 0.02\n",
                      overrides=["atom.gamma=0.05", "modes.n_modes=201"])
    assert cfg.atom.gamma == 0.05
    assert cfg.modes.n_modes == 201


def test_boolean_override():
    cfg = load_config(overrides=["first_order.symmetrized=true"])
    assert cfg.first_order.symmetrized is True


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="not permitted"):
        load_config("[atom]\nbadkey = 1\n")


def test_unknown_section_rejected():
    with pytest.raises(ConfigError):
        load_config("[bogus]\nx = 1\n")


def test_unparseable_value_rejected():
    with pytest.raises(ConfigError):
        load_config("[atom]\ngamma = banana\n")


def test_malformed_override_rejected():
    with pytest.raises(ConfigError, match="must look like"):
        load_config(overrides=["nodots"])


def test_invalid_physics_rejected():
    with pytest.raises(ConfigError):
        cfg = load_config(overrides=["atom.gamma=-1"])
        cfg.atom_spec()


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[packet]\nkappa = 0.5\n", encoding="utf-8")
    cfg = load_config_file(str(path), overrides=["packet.launch=-10"])
    packet = cfg.packet_spec()
    assert packet.kappa == 0.5
    assert packet.launch == -10.0
    assert packet.arrival_time == 10.0


def test_missing_config_file():
    with pytest.raises(ConfigError, match="cannot read"):
        load_config_file("/nonexistent/run.ini")


def test_converters():
    cfg = SimulationConfig()
    assert cfg.atom_spec().gamma == 0.0125
    assert cfg.time_grid().times.shape == (4001,)
    assert cfg.mode_system().length == 251.32
    assert cfg.quadrature_config().k_max == 4.0
    grid = cfg.iteration_grid()
    assert grid.k_min == -4.0
    assert grid.k_max == 4.0
    assert grid.spacing == 0.004
