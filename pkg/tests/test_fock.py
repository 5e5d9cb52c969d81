# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from phase_ovm.core.constants import OperatorKindEnum
from phase_ovm.core.exceptions import ContractViolationError, IndexOutOfRangeError
from phase_ovm.modules.fock import (
    build_operator,
    coherent_amplitudes,
    coherent_state,
    density_matrix,
    even_cat_state,
    excited_coherent,
    expectation,
    fock_state,
    hermitian_spectrum,
    parse_state,
    position_wavefunctions,
    rotate_by_number_phase,
)


def test_fock_state_unit_vector():
    _state = fock_state(3, 8)
    assert _state.amps[3] == 1.0
    assert _state.norm2 == 1.0
    assert np.count_nonzero(_state.amps) == 1


def test_fock_state_out_of_range():
    with pytest.raises(IndexOutOfRangeError):
        fock_state(8, 8)


def test_coherent_state_moments():
    _state = coherent_state(2.0, 64)
    _rho = density_matrix(_state)
    _number = build_operator(OperatorKindEnum.number, 64)
    _lower = build_operator(OperatorKindEnum.lower, 64)

    assert _state.norm2 == pytest.approx(1.0, abs=1e-14)
    assert _state.tail_mass < 1e-30
    assert expectation(_number, _rho).real == pytest.approx(4.0, abs=1e-10)
    assert expectation(_lower, _rho) == pytest.approx(2.0 + 0j, abs=1e-10)


def test_coherent_state_truncation_reports_tail():
    _state = coherent_state(3.0, 4)
    assert _state.tail_mass > 0.1
    assert _state.norm2 == pytest.approx(1.0, abs=1e-14)
    assert _state.raw_norm2 < 1.0


def test_even_cat_state_norm_and_parity():
    _gamma = 2.0
    _state = even_cat_state(_gamma, 64)
    assert _state.norm2 == pytest.approx(1.0, abs=1e-14)
    assert _state.raw_norm2 == pytest.approx(2.0 * (1.0 + math.exp(-2.0 * _gamma**2)), rel=1e-12)
    assert np.max(np.abs(_state.amps[1::2])) == 0.0


def test_excited_coherent_amplitudes():
    _z = 0.7 - 0.2j
    _state = excited_coherent(_z, 0, 12)
    assert not _state.normalized
    assert _state.amps[3] == pytest.approx(_z**3 / math.sqrt(6.0))

    _shifted = excited_coherent(_z, 2, 12)
    assert _shifted.amps[0] == 0.0
    assert _shifted.amps[2] == 1.0
    ## √(3!/2!)·z/1!
    assert _shifted.amps[3] == pytest.approx(math.sqrt(3.0) * _z)


def test_canonical_commutator_on_leading_block():
    _dim = 20
    _x = build_operator(OperatorKindEnum.x, _dim).entries
    _p = build_operator(OperatorKindEnum.p, _dim).entries
    _commutator = _x @ _p - _p @ _x
    assert np.allclose(_commutator[:-1, :-1], 1j * np.eye(_dim - 1), atol=1e-12)


def test_parity_operator():
    _parity = build_operator(OperatorKindEnum.parity, 6).entries
    assert np.array_equal(np.diag(_parity).real, [1.0, -1.0, 1.0, -1.0, 1.0, -1.0])


def test_rotate_by_number_phase():
    _dim = 6
    _matrix = np.arange(_dim * _dim, dtype=np.complex128).reshape(_dim, _dim)
    _theta = 0.4
    _rotated = rotate_by_number_phase(_matrix, _theta).entries

    _phase = np.diag(np.exp(1j * _theta * np.arange(_dim)))
    assert np.allclose(_rotated, _phase @ _matrix @ _phase.conj().T, atol=1e-13)


def test_hermitian_spectrum_rejects_non_hermitian():
    _matrix = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    with pytest.raises(ContractViolationError):
        hermitian_spectrum(_matrix)


def test_hermitian_spectrum_ascending():
    _spectrum = hermitian_spectrum(build_operator(OperatorKindEnum.number, 5))
    assert np.allclose(_spectrum.eigenvalues, np.arange(5))
    assert _spectrum.min == pytest.approx(0.0)
    assert _spectrum.max == pytest.approx(4.0)


def test_position_wavefunctions_orthonormal():
    _x = np.linspace(-12.0, 12.0, 2401)
    _psi = position_wavefunctions(10, _x)
    _gram = (_psi.T * (_x[1] - _x[0])) @ _psi
    assert np.allclose(_gram, np.eye(10), atol=1e-10)


def test_non_square_matrix_rejected():
    with pytest.raises(ContractViolationError):
        expectation(np.zeros((2, 3)), np.eye(2))


@pytest.mark.parametrize(
    "text, index",
    [("fock:3", 3), ("FOCK: 0", 0)],
)
def test_parse_fock_state(text, index):
    assert parse_state(text, 8).amps[index] == 1.0


def test_parse_amplitude_states():
    assert np.allclose(parse_state("coherent:1,0.5", 32).amps, coherent_state(1.0 + 0.5j, 32).amps)
    assert np.allclose(parse_state("cat:2", 32).amps, even_cat_state(2.0, 32).amps)


@pytest.mark.parametrize("spec", ["squeezed:1", "fock:x", "coherent:1,2,3", "coherent:a,b", "fock:-1"])
def test_parse_state_rejects_malformed(spec):
    with pytest.raises(ValueError):
        parse_state(spec, 8)


def test_coherent_state_large_amplitude_stays_finite():
    _state = coherent_state(40.0, 3000)
    assert np.all(np.isfinite(_state.amps))
    assert _state.norm2 == pytest.approx(1.0, abs=1e-12)
    assert _state.raw_norm2 == pytest.approx(1.0, abs=1e-12)

    _cat = even_cat_state(40.0, 3000)
    assert np.all(np.isfinite(_cat.amps))
    assert _cat.norm2 == pytest.approx(1.0, abs=1e-12)


def test_coherent_amplitude_recursion():
    _alpha = 1.3 - 0.8j
    _amps = coherent_amplitudes(_alpha, 40)
    _n = np.arange(39)
    assert np.allclose(_amps[1:], _alpha * _amps[:-1] / np.sqrt(_n + 1.0), rtol=1e-12, atol=0.0)
    assert _amps[0] == pytest.approx(math.exp(-0.5 * abs(_alpha) ** 2), rel=1e-14)


def test_vacuum_amplitudes():
    _amps = coherent_amplitudes(np.array([0.0, 1.0]), 6)
    assert np.array_equal(_amps[0], [1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    assert _amps.shape == (2, 6)


@pytest.mark.parametrize("n", [1, 2, 7])
def test_lowering_operator_on_number_state(n):
    _dim = 10
    _lower = build_operator(OperatorKindEnum.lower, _dim).entries
    _lowered = _lower @ fock_state(n, _dim).amps
    assert np.allclose(_lowered, math.sqrt(n) * fock_state(n - 1, _dim).amps, atol=1e-15)


def test_rotation_composes_additively():
    _rng = np.random.default_rng(7)
    _matrix = _rng.normal(size=(8, 8)) + 1j * _rng.normal(size=(8, 8))
    _twice = rotate_by_number_phase(rotate_by_number_phase(_matrix, 0.9), 2.3).entries
    assert np.allclose(_twice, rotate_by_number_phase(_matrix, 3.2).entries, atol=1e-13)


def test_parity_maps_coherent_to_opposite_amplitude():
    _dim = 48
    _alpha = 1.5 + 0.5j
    _parity = build_operator(OperatorKindEnum.parity, _dim).entries
    _state = coherent_state(_alpha, _dim)
    _flipped = _parity @ _state.amps
    assert np.max(np.abs(_flipped - coherent_state(-_alpha, _dim).amps)) <= max(
        1e-14, math.sqrt(_state.tail_mass)
    )


def test_hermitian_spectrum_reconstructs_matrix():
    _matrix = build_operator(OperatorKindEnum.x, 12).entries + build_operator(OperatorKindEnum.number, 12).entries
    _spectrum = hermitian_spectrum(_matrix)
    _vectors = _spectrum.eigenvectors
    _rebuilt = _vectors @ np.diag(_spectrum.eigenvalues) @ _vectors.conj().T
    assert np.allclose(_rebuilt, _matrix, atol=1e-12)
    assert np.all(np.diff(_spectrum.eigenvalues) >= 0.0)
