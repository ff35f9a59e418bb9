"""Tests for the dense linear algebra kernel."""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from symlog import linalg
from symlog.errors import DimensionMismatch, SingularMatrix


def _random_complex(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_as_square_accepts_fortran_order():
    # Matrix files read back in column-major order; validation must not
    # assume C-contiguity.
    a = np.asfortranarray(_random_complex(4, 0))
    out = linalg.as_square(a)
    np.testing.assert_array_equal(out, a)


def test_as_square_rejects_bad_input():
    with pytest.raises(DimensionMismatch):
        linalg.as_square(np.zeros((2, 3)))
    with pytest.raises(DimensionMismatch):
        linalg.as_square(np.ones(4))
    bad = np.eye(3, dtype=complex)
    bad[1, 2] = np.nan
    with pytest.raises(DimensionMismatch):
        linalg.as_square(bad)
    bad[1, 2] = np.inf * 1j
    with pytest.raises(DimensionMismatch):
        linalg.as_square(bad)


def test_mat_mul_against_triple_loop():
    a = _random_complex(5, 1)
    b = _random_complex(5, 2)
    expect = np.zeros((5, 5), dtype=complex)
    for i in range(5):
        for j in range(5):
            for k in range(5):
                expect[i, j] += a[i, k] * b[k, j]
    np.testing.assert_allclose(linalg.mat_mul(a, b), expect, atol=1e-13)


def test_mat_mul_shape_check():
    with pytest.raises(DimensionMismatch):
        linalg.mat_mul(np.eye(3), np.eye(4))


def test_inverse_reconstruction():
    a = _random_complex(6, 3) + 6 * np.eye(6)
    inv = linalg.inverse(a)
    np.testing.assert_allclose(a @ inv, np.eye(6), atol=1e-12)
    np.testing.assert_allclose(inv @ a, np.eye(6), atol=1e-12)


def test_inverse_singular():
    a = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
    with pytest.raises(SingularMatrix):
        linalg.inverse(a)
    with pytest.raises(SingularMatrix):
        linalg.inverse(np.zeros((3, 3), dtype=complex))


def test_eigh_reconstruction_and_order():
    a = _random_complex(7, 4)
    h = 0.5 * (a + a.conj().T)
    q, e = linalg.eigh(h)
    np.testing.assert_allclose((q * e) @ q.conj().T, h, atol=1e-12)
    np.testing.assert_allclose(q.conj().T @ q, np.eye(7), atol=1e-13)
    assert np.all(np.diff(e) >= 0)


def test_eigh_rejects_non_hermitian():
    a = _random_complex(5, 5)
    with pytest.raises(DimensionMismatch):
        linalg.eigh(a)


def test_svd_reconstruction():
    a = _random_complex(6, 6)
    u, s, v = linalg.svd(a)
    np.testing.assert_allclose((u * s) @ v.conj().T, a, atol=1e-12)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-13)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(6), atol=1e-13)
    assert np.all(s >= 0) and np.all(np.diff(s) <= 0)


def test_qr_unitary_phase_fix():
    a = _random_complex(8, 6)
    q = linalg.qr_unitary(a)
    np.testing.assert_allclose(q.conj().T @ q, np.eye(8), atol=1e-13)
    # The phase fix makes R's diagonal real positive, so a unitary input is
    # reproduced (up to rounding) rather than an arbitrary gauge of it.
    np.testing.assert_array_equal(
        linalg.qr_unitary(np.diag([-1.0, 1.0]).astype(complex)),
        np.diag([-1.0, 1.0]).astype(complex))


def test_qr_unitary_idempotent_on_unitary():
    h = _random_complex(6, 7)
    u = linalg.expm_antihermitian(0.5 * (h - h.conj().T))
    np.testing.assert_allclose(linalg.qr_unitary(u), u, atol=1e-13)


def test_qr_unitary_singular():
    a = np.eye(4, dtype=complex)
    a[:, 2] = 0.0
    with pytest.raises(SingularMatrix):
        linalg.qr_unitary(a)


def test_norms_match_numpy_and_nest():
    for seed in range(5):
        a = _random_complex(9, 10 + seed)
        s = linalg.spectral_norm(a)
        f = linalg.frobenius_norm(a)
        assert np.isclose(s, np.linalg.norm(a, 2), rtol=1e-12)
        assert np.isclose(f, np.linalg.norm(a, "fro"), rtol=1e-12)
        assert s <= f * (1 + 1e-12)
        assert f <= 3 * s * (1 + 1e-12)  # sqrt(n) with n = 9


def test_expm_antihermitian_matches_scipy():
    a = _random_complex(6, 11)
    h = 0.5 * (a - a.conj().T)
    out = linalg.expm_antihermitian(h)
    np.testing.assert_allclose(out, scipy.linalg.expm(h), atol=1e-12)
    np.testing.assert_allclose(out.conj().T @ out, np.eye(6), atol=1e-13)
