"""Tests for the structured spectral factorization."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from symlog import linalg
from symlog.errors import ObstructionDetected, UnsupportedClass
from symlog.gen import GapSpec, aiii_obstructed_unitary, gapped_spectral_model
from symlog.specfact import diag_structured, reconstruct
from symlog.symmetry import SymmetryClass, make_context

A = SymmetryClass.GENERIC_A
AI = SymmetryClass.SYMMETRIC_AI
AII = SymmetryClass.SELF_DUAL_AII
AIII = SymmetryClass.CHIRAL_AIII


def test_identity():
    res = diag_structured(np.eye(4, dtype=complex), A)
    np.testing.assert_array_equal(res.d_phases, np.zeros(4))
    np.testing.assert_allclose(reconstruct(res), np.eye(4), atol=1e-14)


def test_aiii_two_by_two_rotation():
    th = 0.7
    u = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]],
                 dtype=complex)
    res = diag_structured(u, AIII)
    np.testing.assert_allclose(res.d_phases, [-0.7, 0.7], atol=1e-13)
    # Columns are paired through the grading exactly, with entries of
    # modulus 1/sqrt(2).
    gamma = make_context(AIII, 2).gamma
    np.testing.assert_array_equal(gamma @ res.q[:, :1], res.q[:, 1:])
    np.testing.assert_allclose(np.abs(res.q), np.full((2, 2), 2 ** -0.5),
                               atol=1e-13)
    lam = np.exp(1j * res.d_phases)
    assert linalg.spectral_norm(u @ res.q - res.q * lam) < 1e-13


def test_ai_real_eigenvectors_and_phase_recovery():
    model = gapped_spectral_model(AI, 12, GapSpec(gap=1e-3), 21)
    res = diag_structured(model.u, AI)
    np.testing.assert_array_equal(res.q.imag, np.zeros((12, 12)))
    np.testing.assert_allclose(np.sort(res.d_phases), np.sort(model.phases),
                               atol=1e-11)
    assert linalg.spectral_norm(reconstruct(res) - model.u) < 1e-11


def test_generic_round_trip():
    model = gapped_spectral_model(A, 10, GapSpec(gap=0.2), 22)
    res = diag_structured(model.u, A)
    assert linalg.spectral_norm(reconstruct(res) - model.u) < 1e-12
    assert linalg.spectral_norm(
        res.q.conj().T @ res.q - np.eye(10)) < 1e-13


def test_phases_stay_principal_near_the_cut():
    model = gapped_spectral_model(A, 8, GapSpec(gap=1e-4), 23)
    res = diag_structured(model.u, A)
    assert np.abs(res.d_phases).max() <= np.pi - 1e-4 + 1e-10


def test_aiii_phase_pairing_is_exact():
    model = gapped_spectral_model(AIII, 12, GapSpec(gap=1e-2), 24)
    res = diag_structured(model.u, AIII)
    half = 6
    np.testing.assert_array_equal(res.d_phases[:half] + res.d_phases[half:],
                                  np.zeros(half))
    gamma = make_context(AIII, 12).gamma
    np.testing.assert_array_equal(gamma @ res.q[:, :half], res.q[:, half:])


def test_self_dual_unsupported():
    with pytest.raises(UnsupportedClass):
        diag_structured(np.eye(4, dtype=complex), AII)


def test_obstructed_input_rejected():
    with pytest.raises(ObstructionDetected):
        diag_structured(aiii_obstructed_unitary(6, 2), AIII)


def test_result_is_frozen():
    res = diag_structured(np.eye(2, dtype=complex), A)
    with pytest.raises(dataclasses.FrozenInstanceError):
        res.d_phases = np.zeros(2)
