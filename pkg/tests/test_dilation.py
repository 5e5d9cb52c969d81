# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from phase_ovm.core.exceptions import ContractViolationError, DimensionBoundError
from phase_ovm.modules.phasespace import QuadratureSpec, default_quadrature
from phase_ovm.modules.q_phase import rho_q_matrix_oracle
from phase_ovm.modules.dilation import (
    CONSTANT_PRODUCT_SCHEDULE,
    FIXED_BETA_SCHEDULE,
    BeamSplitterSpec,
    bs_transform_coherent,
    dilation_convergence,
    pi_tau_beta,
    predicted_output_check,
    two_mode_bs_oracle,
)


DIM = 24


@pytest.fixture(scope="module")
def quad() -> QuadratureSpec:
    return default_quadrature(DIM)


def test_bs_transform_coherent():
    _alpha_out, _beta_out = bs_transform_coherent(1.0 + 0.5j, -0.3j, 0.4)
    _cos, _sin = math.cos(0.4), math.sin(0.4)
    assert _alpha_out == pytest.approx((1.0 + 0.5j) * _cos + 1j * (-0.3j) * _sin)
    assert _beta_out == pytest.approx(-0.3j * _cos + 1j * (1.0 + 0.5j) * _sin)
    assert abs(_alpha_out) ** 2 + abs(_beta_out) ** 2 == pytest.approx(1.25 + 0.09)


def test_transmissivity():
    assert BeamSplitterSpec(tau=0.0).transmissivity == pytest.approx(1.0)
    assert BeamSplitterSpec(tau=math.pi / 4.0).transmissivity == pytest.approx(0.0, abs=1e-15)
    assert "transmissivity" in BeamSplitterSpec(tau=0.1).model_dump()


def test_two_mode_oracle_size_bound():
    with pytest.raises(DimensionBoundError):
        two_mode_bs_oracle(65, 64, 0.1)


def test_two_mode_oracle_preserves_total_number():
    _check = predicted_output_check(1.0 + 0.2j, 0.5, 0.3, dim_a=20, dim_b=20)
    assert _check.fidelity == pytest.approx(1.0, abs=1e-9)
    assert _check.number_commutator < 1e-10
    assert _check.unitarity_defect < 1e-10


def test_tau_zero_reproduces_q_oracle(quad):
    _reduced = pi_tau_beta(0.0, 0.0, 1.0e6, DIM, quad).matrix.entries
    _oracle = rho_q_matrix_oracle(0.0, DIM, quad).entries
    assert np.array_equal(_reduced, _oracle)


def test_tau_zero_distance_is_quadrature_error(quad):
    assert pi_tau_beta(0.7, 0.0, 1.0, DIM, quad).distance_to_q <= 1e-9


def test_dilated_element_is_positive(quad):
    _entries = pi_tau_beta(0.3, 0.2, 1.0 - 0.5j, DIM, quad).matrix.entries
    assert np.max(np.abs(_entries - _entries.conj().T)) < 1e-12
    assert np.linalg.eigvalsh(_entries)[0] >= -1e-10


def test_large_displacement_rejected(quad):
    with pytest.raises(ContractViolationError):
        pi_tau_beta(0.0, 0.1, 100.0, DIM, quad)


def test_fixed_beta_schedule_converges(quad):
    _rows = dilation_convergence(0.0, FIXED_BETA_SCHEDULE, DIM, quad)
    _distances = [_row.distance for _row in _rows]
    assert [_row.tau for _row in _rows] == [0.2, 0.1, 0.05, 0.025]
    assert all(_later < _earlier for _earlier, _later in zip(_distances, _distances[1:]))


def test_constant_product_schedule_plateaus(quad):
    _rows = dilation_convergence(0.0, CONSTANT_PRODUCT_SCHEDULE, DIM, quad)
    assert min(_row.distance for _row in _rows) > 1e-3
    assert all(_row.beta_sin_tau == pytest.approx(0.5) for _row in _rows)


def test_empty_schedule_rejected():
    with pytest.raises(ValueError):
        dilation_convergence(0.0, [], DIM)
