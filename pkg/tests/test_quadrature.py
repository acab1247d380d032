"""Gauss-Kronrod panel quadrature."""
import math

import numpy as np
import pytest

from packetatom.core import SolverError
from packetatom.quadrature import (
    integrate,
    panel_nodes,
    panel_sums,
    refine_edges,
    resonance_edges,
)

GAMMA = 0.0125


def test_single_panel_gauss_exact_degree_13():
    # the embedded 7-point Gauss rule integrates degree 13 exactly, so the
    # error estimate |K - G| must vanish
    coeffs = np.array([1.0, 0.0, -3.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 4.0])

    def f(x):
        return np.polyval(coeffs, x)

    x, wk, wg = panel_nodes(np.array([0.0, 1.0]))
    total, err = panel_sums(f(x.ravel()).reshape(x.shape), wk, wg)
    exact = np.polyval(np.polyint(coeffs), 1.0) - np.polyval(np.polyint(coeffs), 0.0)
    assert total == pytest.approx(exact, rel=1e-14)
    assert err.max() < 1e-13


def test_single_panel_kronrod_exact_degree_22():
    def f(x):
        return x**22

    x, wk, wg = panel_nodes(np.array([-1.0, 1.0]))
    total, err = panel_sums(f(x.ravel()).reshape(x.shape), wk, wg)
    assert total == pytest.approx(2.0 / 23.0, rel=1e-13)
    assert err.max() > 1e-10  # Gauss alone is not exact at degree 22


def test_sine_over_half_period():
    value, err = integrate(np.sin, np.array([0.0, math.pi / 2, math.pi]))
    assert value == pytest.approx(2.0, abs=1e-13)
    assert err.sum() < 1e-10


def test_resonance_edges_structure():
    edges = resonance_edges(-4.0, 4.0, GAMMA, 50.0)
    assert edges[0] == -4.0 and edges[-1] == 4.0
    assert 0.0 in edges
    assert np.all(np.diff(edges) > 0)
    widths = np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    zone = 50.0 * GAMMA
    near = (np.abs(mids - 1.0) < zone) | (np.abs(mids + 1.0) < zone)
    assert widths[near].max() <= GAMMA / 4 + 1e-12
    np.testing.assert_array_equal(edges, resonance_edges(-4.0, 4.0, GAMMA, 50.0))


def lorentzian(k):
    return (GAMMA / math.pi) / ((k - 1.0) ** 2 + GAMMA**2)


def test_refined_lorentzian_meets_tolerance():
    exact = (math.atan(3.0 / GAMMA) + math.atan(5.0 / GAMMA)) / math.pi
    edges = resonance_edges(-4.0, 4.0, GAMMA, 50.0)
    value, err = integrate(lorentzian, edges, rel_tol=1e-8)
    assert abs(value - exact) / exact < 1e-8
    assert err.sum() / exact < 1e-8


def test_refinement_is_deterministic():
    start = resonance_edges(-4.0, 4.0, GAMMA, 50.0)
    a = refine_edges(lorentzian, start, 1e-8)
    b = refine_edges(lorentzian, start, 1e-8)
    np.testing.assert_array_equal(a, b)


def test_refine_raises_when_budget_exhausted():
    with pytest.raises(SolverError, match="quadrature tolerance"):
        refine_edges(lorentzian, np.array([-4.0, 4.0]), 1e-6, max_rounds=0)


def test_refine_raises_when_panel_cap_hit():
    with pytest.raises(SolverError):
        refine_edges(lorentzian, np.array([-4.0, 4.0]), 1e-14, max_panels=8)


def test_scale_floor_handles_cancelling_integrand():
    # odd integrand over a symmetric domain: total ~ 0, so the budget must be
    # anchored to the floor rather than the vanishing total
    edges = refine_edges(np.sin, np.array([-4.0, 0.0, 4.0]), 1e-9, scale_floor=1.0)
    x, wk, wg = panel_nodes(edges)
    total, _ = panel_sums(np.sin(x.ravel()).reshape(x.shape), wk, wg)
    assert abs(total) < 1e-12
