"""Shared fixtures.

The expensive objects (kinetics traces, scatter runs, spectra, shift tables)
are session-scoped: they are deterministic pure functions of the default
configuration, so every test can share one instance.
"""
import numpy as np
import pytest
from hypothesis import settings

from packetatom.core import AtomSpec, PacketSpec
from packetatom import first_order, mode_ode, semiclassical, spectrum, ww

settings.register_profile("suite", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def atom():
    return AtomSpec()


@pytest.fixture(scope="session")
def packet():
    return PacketSpec()


@pytest.fixture(scope="session")
def miss(packet):
    return ww.miss_packet(packet)


@pytest.fixture(scope="session")
def hit_trace(atom, packet):
    return ww.kinetics_trace(atom, packet)


@pytest.fixture(scope="session")
def miss_trace(atom, miss):
    return ww.kinetics_trace(atom, miss)


@pytest.fixture(scope="session")
def decay_rep():
    return mode_ode.decay_report()


@pytest.fixture(scope="session")
def scatter():
    return mode_ode.scatter_report()


@pytest.fixture(scope="session")
def spectrum_rep():
    return spectrum.spectrum_report()


@pytest.fixture(scope="session")
def shift_variants():
    return first_order.variant_table()


@pytest.fixture(scope="session")
def scan_arrivals():
    return np.arange(20.0, 131.0, 10.0)


@pytest.fixture(scope="session")
def shift_scan_values(scan_arrivals):
    return first_order.shift_scan(scan_arrivals)


@pytest.fixture(scope="session")
def cgs():
    return semiclassical.cgs_report()
