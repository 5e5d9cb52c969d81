# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from phase_ovm.core.constants import HUSIMI_FILTER_WIDTH, TWO_PI
from phase_ovm.core.exceptions import ContractViolationError
from phase_ovm.modules.fock import coherent_state, density_matrix, even_cat_state, fock_state
from phase_ovm.modules.phasespace import (
    PhaseSpaceGrid,
    QuadratureSpec,
    default_grid,
    default_quadrature,
    gaussian_coarse_grain,
    husimi_field,
    husimi_grid,
    moyal_wigner,
    periodic_weights,
    radial_phase_distribution,
    uniform_thetas,
    wigner_field,
    wigner_grid,
)
from phase_ovm.modules.wigner_phase import wigner_phase_distribution


def _small_grid(half: float = 7.0, nodes: int = 141) -> PhaseSpaceGrid:
    return PhaseSpaceGrid(x_min=-half, x_max=half, p_min=-half, p_max=half, n_x=nodes, n_p=nodes)


def test_uniform_thetas():
    assert np.allclose(uniform_thetas(4), [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi])


def test_periodic_weights():
    assert np.allclose(periodic_weights(uniform_thetas(8)), TWO_PI / 8)

    _thetas = np.array([0.0, 0.5, 2.0, 4.0])
    _weights = periodic_weights(_thetas)
    assert np.sum(_weights) == pytest.approx(TWO_PI)
    assert _weights[1] == pytest.approx(1.0)


def test_default_grid_and_quadrature():
    _grid = default_grid(64)
    assert (_grid.x_min, _grid.x_max, _grid.n_x) == (-6.0, 6.0, 241)
    assert _grid.dx == pytest.approx(0.05)
    assert default_grid(256).x_max == pytest.approx(12.0)
    assert default_quadrature(32).r_max == pytest.approx(12.0)


def test_grid_rejects_bad_bounds():
    with pytest.raises(ValueError):
        PhaseSpaceGrid(x_min=1.0, x_max=-1.0, p_min=-1.0, p_max=1.0, n_x=5, n_p=5)


def test_wigner_values_at_origin():
    _origin = np.zeros(1)
    assert wigner_field(density_matrix(fock_state(0, 4)))(_origin, _origin)[0] == pytest.approx(1.0 / math.pi)
    assert wigner_field(density_matrix(fock_state(1, 4)))(_origin, _origin)[0] == pytest.approx(-1.0 / math.pi)
    assert husimi_field(density_matrix(fock_state(0, 4)))(_origin, _origin)[0] == pytest.approx(1.0 / TWO_PI)


def test_wigner_matches_moyal_integral():
    _rho = density_matrix(even_cat_state(1.2 + 0.3j, 24))
    _x = np.array([0.0, 0.7, -1.1, 2.0])
    _p = np.array([0.0, -0.4, 0.9, 0.3])
    assert np.allclose(wigner_field(_rho)(_x, _p), moyal_wigner(_rho, _x, _p), atol=1e-9)


def test_coherent_wigner_is_gaussian():
    _alpha = 1.0 + 0.5j
    _rho = density_matrix(coherent_state(_alpha, 40))
    _x = np.array([0.3, 1.5, -0.2])
    _p = np.array([0.1, 0.9, 2.0])
    _x0, _p0 = math.sqrt(2.0) * _alpha.real, math.sqrt(2.0) * _alpha.imag
    _expected = np.exp(-((_x - _x0) ** 2) - (_p - _p0) ** 2) / math.pi
    assert np.allclose(wigner_field(_rho)(_x, _p), _expected, atol=1e-10)


def test_wigner_grid_mass_and_leakage():
    _grid = wigner_grid(density_matrix(coherent_state(1.0, 32)), default_grid(32))
    assert _grid.mass() == pytest.approx(1.0, abs=1e-8)
    assert _grid.leakage < 1e-9

    _shifted = wigner_grid(density_matrix(coherent_state(4.0, 48)), default_grid(32))
    assert _shifted.leakage > 0.1


def test_grid_sampling_is_thread_independent():
    _rho = density_matrix(even_cat_state(2.0, 32))
    _grid = default_grid(32)
    assert np.array_equal(wigner_grid(_rho, _grid, 1).values, wigner_grid(_rho, _grid, 4).values)


def test_coarse_grained_wigner_is_husimi():
    _grid = _small_grid()
    for _rho in (
        density_matrix(fock_state(0, 24)),
        density_matrix(fock_state(3, 24)),
        density_matrix(even_cat_state(1.5, 32)),
    ):
        _smoothed = gaussian_coarse_grain(wigner_grid(_rho, _grid), HUSIMI_FILTER_WIDTH)
        _husimi = husimi_grid(_rho, _grid)
        assert np.max(np.abs(_smoothed.values - _husimi.values)) < 2e-6


def test_coarse_grain_rejects_narrow_grid():
    _grid = wigner_grid(density_matrix(fock_state(0, 4)), _small_grid(half=2.0, nodes=41))
    with pytest.raises(ContractViolationError):
        gaussian_coarse_grain(_grid, HUSIMI_FILTER_WIDTH)


def test_radial_phase_distribution_of_number_state_is_uniform():
    _field = husimi_field(density_matrix(fock_state(2, 8)))
    _quad = QuadratureSpec(nodes=200, r_max=12.0)
    _distribution = radial_phase_distribution(_field, uniform_thetas(12), _quad)
    assert np.allclose(_distribution.values, 1.0 / TWO_PI, atol=1e-10)
    assert _distribution.total() == pytest.approx(1.0, abs=1e-9)


def test_radial_phase_distribution_of_number_state_wigner_is_uniform():
    _field = wigner_field(density_matrix(fock_state(3, 8)))
    _quad = QuadratureSpec(nodes=200, r_max=10.0)
    _distribution = radial_phase_distribution(_field, uniform_thetas(12), _quad)
    assert np.allclose(_distribution.values, 1.0 / TWO_PI, atol=1e-10)


def test_radial_phase_of_wigner_grid_matches_trace():
    _rho = density_matrix(coherent_state(0.7 + 0.4j, 16))
    _thetas = uniform_thetas(24)
    _grid = wigner_grid(_rho, _small_grid(half=6.0, nodes=401))

    _radial = radial_phase_distribution(_grid, _thetas, QuadratureSpec(nodes=160, r_max=6.0))
    _direct = wigner_phase_distribution(_rho, _thetas)
    assert np.max(np.abs(_radial.values - _direct.values)) <= 1e-6


def test_radial_phase_distribution_checks_cutoff():
    _field = husimi_field(density_matrix(coherent_state(2.0, 24)))
    with pytest.raises(ContractViolationError):
        radial_phase_distribution(_field, uniform_thetas(8), QuadratureSpec(nodes=50, r_max=3.0))


def test_trapezoid_quadrature_nodes():
    _r, _w = QuadratureSpec(rule="trapezoid", nodes=11, r_max=1.0).nodes_weights
    assert np.allclose(_r, np.linspace(0.0, 1.0, 11))
    assert np.sum(_w) == pytest.approx(1.0)
