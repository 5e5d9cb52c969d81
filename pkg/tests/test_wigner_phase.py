# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from phase_ovm.core.constants import TWO_PI, ParityEnum
from phase_ovm.core.exceptions import ContractViolationError
from phase_ovm.modules.fock import (
    coherent_state,
    density_matrix,
    even_cat_state,
    fock_state,
    hermitian_spectrum,
    rotate_by_number_phase,
)
from phase_ovm.modules.phasespace import default_quadrature, uniform_thetas
from phase_ovm.modules.wigner_phase import (
    WignerEigenstate,
    commutator_check,
    commutator_table,
    eigen_ratio_spread,
    eigenfunction_residual,
    eta_w_element,
    eta_w_matrix,
    fit_kernel_constant,
    number_commutator_norm,
    position_kernel_w0,
    rho_w_matrix,
    rho_w_matrix_oracle,
    spectrum_parity_profile,
    wigner_completeness,
    wigner_phase_distribution,
)


EIGEN_AXIS = np.linspace(-5.0, 5.0, 1001)
EIGEN_LAMBDAS = [-1.0 / (4.0 * math.pi), 1.0 / (4.0 * math.pi), -1.0 / (8.0 * math.pi), 1.0 / (8.0 * math.pi)]


def test_rho_w_hermitian_with_uniform_diagonal():
    _entries = rho_w_matrix(0.0, 32).entries
    assert np.max(np.abs(_entries - _entries.conj().T)) < 1e-14
    assert np.allclose(np.diag(_entries).real, 1.0 / TWO_PI, atol=1e-14)


def test_rho_w_leading_entries():
    _entries = rho_w_matrix(0.0, 3).entries.real
    ## ⟨0|ρ_W|1⟩ = √(π/2)/(2π) and ⟨0|ρ_W|2⟩ = 1/(π·√2)
    assert _entries[0, 1] == pytest.approx(math.sqrt(math.pi / 2.0) / TWO_PI, rel=1e-13)
    assert _entries[0, 2] == pytest.approx(1.0 / (math.pi * math.sqrt(2.0)), rel=1e-13)


@pytest.mark.parametrize("theta", [0.3, 1.7, 5.1])
def test_rho_w_rotation_covariance(theta):
    _dim = 16
    _rotation = np.diag(np.exp(1j * theta * np.arange(_dim)))
    _expected = _rotation @ rho_w_matrix(0.0, _dim).entries @ _rotation.conj().T
    assert np.allclose(rho_w_matrix(theta, _dim).entries, _expected, atol=1e-12)


def test_rho_w_is_not_positive():
    assert hermitian_spectrum(rho_w_matrix(0.0, 64).matrix).min < -1e-3


def test_wigner_completeness():
    assert np.allclose(wigner_completeness(24), np.eye(24), atol=1e-12)
    assert np.allclose(wigner_completeness(24, 720), np.eye(24), atol=1e-9)


def test_fock_state_wigner_phase_is_uniform():
    _distribution = wigner_phase_distribution(density_matrix(fock_state(5, 16)), uniform_thetas(32))
    assert np.allclose(_distribution.values, 1.0 / TWO_PI, atol=1e-14)


def test_cat_state_wigner_phase_goes_negative():
    _rho = density_matrix(even_cat_state(2.0, 64))
    _distribution = wigner_phase_distribution(_rho, uniform_thetas(720))
    assert _distribution.min() < 0.0
    assert _distribution.total() == pytest.approx(1.0, abs=1e-8)


def test_wigner_phase_rejects_unnormalized_state():
    with pytest.raises(ContractViolationError):
        wigner_phase_distribution(2.0 * np.eye(4) / 4.0, uniform_thetas(8))


@pytest.mark.slow
def test_rho_w_matches_quadrature_oracle():
    _oracle = rho_w_matrix_oracle(0.0, 16, default_quadrature(16))
    assert np.max(np.abs(_oracle.entries - rho_w_matrix(0.0, 16).entries)) < 1e-7


def test_kernel_constant_fit():
    _fit = fit_kernel_constant()
    assert _fit.residual < 1e-4
    assert _fit.constant > 0.0
    assert _fit.eigen_constant == pytest.approx(1.0 / _fit.constant, rel=1e-12)


def test_position_kernel_rejects_asymmetric_axis():
    with pytest.raises(ContractViolationError):
        position_kernel_w0(np.linspace(-4.0, 5.0, 401))

    _kernel = position_kernel_w0(np.linspace(-4.0, 4.0, 401))
    assert _kernel.kernel.shape == (401, 401)
    assert _kernel.kernel[0, 0] == 0.0


def test_eigenstate_parity_from_sign():
    assert WignerEigenstate.from_lambda(-0.1).parity == ParityEnum.even
    assert WignerEigenstate.from_lambda(0.1).parity == ParityEnum.odd
    with pytest.raises(ValueError):
        WignerEigenstate(**{"lambda": -0.1, "p": 1.0, "parity": ParityEnum.odd})


@pytest.mark.slow
@pytest.mark.parametrize("lambda_", EIGEN_LAMBDAS)
def test_eigenfunction_residuals(lambda_):
    _check = eigenfunction_residual(lambda_, EIGEN_AXIS)
    assert _check.de_residual <= 1e-8
    assert _check.kernel_residual <= 1e-2
    assert _check.eigenstate.parity == (ParityEnum.even if lambda_ < 0.0 else ParityEnum.odd)


@pytest.mark.slow
def test_kernel_ratio_is_shared_by_all_eigenvalues():
    _checks = [eigenfunction_residual(_lambda, EIGEN_AXIS) for _lambda in EIGEN_LAMBDAS]
    assert eigen_ratio_spread(_checks) <= 1e-2


def test_ratio_spread_needs_checks():
    with pytest.raises(ContractViolationError):
        eigen_ratio_spread([])


def test_eigenfunction_rejects_zero_eigenvalue():
    with pytest.raises(ContractViolationError):
        eigenfunction_residual(0.0, EIGEN_AXIS)


def test_eta_element_matches_truncated_product():
    _eta = eta_w_matrix(24).entries
    for _n, _m in [(0, 0), (1, 3), (4, 2), (6, 6), (5, 8)]:
        assert eta_w_element(_n, _m) == pytest.approx(_eta[_n, _m], abs=1e-10)


def test_conjugate_commutator_block():
    _rows = commutator_table([40, 80, 160], block=8)
    _deviations = [_row.deviation for _row in _rows]
    assert max(_deviations) <= 1e-8
    assert all(_later <= _earlier + 1e-12 for _earlier, _later in zip(_deviations, _deviations[1:]))


def test_commutator_block_limit():
    with pytest.raises(ContractViolationError):
        commutator_check(16, 5)


def test_number_commutator_nonzero():
    assert number_commutator_norm(32) > 1e-2


def test_spectrum_parity_profile_shape():
    _profile = spectrum_parity_profile(32)
    assert _profile.eigenvalues.shape == (32,)
    assert np.all(np.abs(_profile.parities) <= 1.0 + 1e-12)
    assert 0.0 <= _profile.agreement <= 1.0


def test_spectrum_sign_follows_parity():
    _profile = spectrum_parity_profile(64)
    assert _profile.agreement >= 0.95

    _strong = np.abs(_profile.parities) > 0.5
    assert np.count_nonzero(_strong) > 0
    assert np.all(np.sign(_profile.eigenvalues[_strong]) == -np.sign(_profile.parities[_strong]))


def test_rotated_state_shifts_wigner_phase():
    _rho = density_matrix(coherent_state(1.2 + 0.4j, 32))
    _thetas = uniform_thetas(48)
    _base = wigner_phase_distribution(_rho, _thetas).values
    for _shift in (1, 7, 30):
        _rotated = rotate_by_number_phase(_rho, TWO_PI * _shift / 48)
        _values = wigner_phase_distribution(_rotated, _thetas).values
        assert np.allclose(_values, np.roll(_base, _shift), atol=1e-12)


def test_eta_interior_is_hermitian_with_parity_blocks():
    _interior = eta_w_matrix(64).entries[:61, :61]
    assert np.max(np.abs(_interior - _interior.conj().T)) <= 1e-9

    _n = np.arange(61)
    _odd = (_n[:, None] - _n[None, :]) % 2 == 1
    assert np.all(_interior[_odd] == 0.0)


def test_position_kernel_is_symmetric():
    _kernel = position_kernel_w0(np.linspace(-4.0, 4.0, 401)).kernel
    assert np.array_equal(_kernel, _kernel.T)
