"""Tests for structured ensemble generators and Trotterized drives."""

from __future__ import annotations

import numpy as np
import pytest

from symlog import linalg
from symlog.errors import DimensionMismatch, UnsupportedClass
from symlog.gen import (
    DriveSpec,
    GapSpec,
    aiii_obstructed_unitary,
    floquet_operator,
    gapped_spectral_model,
    haar_orthogonal,
    haar_unitary,
    random_gapped_unitary,
    substream,
    symmetric_drive,
)
from symlog.symmetry import SymmetryClass, aiii_index, residual
from symlog.rootlog import sqrt_structured

A = SymmetryClass.GENERIC_A
AI = SymmetryClass.SYMMETRIC_AI
AII = SymmetryClass.SELF_DUAL_AII
AIII = SymmetryClass.CHIRAL_AIII


def _arc_gap(u):
    """Arc distance from -1 to the nearest eigenvalue, via the stock solver."""
    phases = np.angle(np.linalg.eigvals(u))
    return float((np.pi - np.abs(phases)).min())


def test_substream_reproducible_and_split():
    a = substream(1, 2, 3).standard_normal(4)
    b = substream(1, 2, 3).standard_normal(4)
    c = substream(1, 2, 4).standard_normal(4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_gap_spec_validation():
    GapSpec(gap=0.1).validate(8)
    with pytest.raises(ValueError):
        GapSpec(gap=0.0).validate(8)
    with pytest.raises(ValueError):
        GapSpec(gap=np.pi).validate(8)
    with pytest.raises(ValueError):
        GapSpec(gap=0.1, pinned=3).validate(8)
    with pytest.raises(ValueError):
        GapSpec(gap=0.1, pinned=0).validate(8)
    with pytest.raises(ValueError):
        GapSpec(gap=0.1, pinned=8).validate(6)


def test_haar_samplers():
    u = haar_unitary(9, substream(4, 0))
    assert linalg.spectral_norm(u.conj().T @ u - np.eye(9)) < 1e-14
    q = haar_orthogonal(9, substream(4, 1))
    assert np.isrealobj(q)
    assert np.linalg.norm(q.T @ q - np.eye(9)) < 1e-13


def test_model_determinism():
    m1 = gapped_spectral_model(AI, 10, GapSpec(gap=1e-3), 31)
    m2 = gapped_spectral_model(AI, 10, GapSpec(gap=1e-3), 31)
    np.testing.assert_array_equal(m1.u, m2.u)
    np.testing.assert_array_equal(m1.vectors, m2.vectors)
    np.testing.assert_array_equal(m1.phases, m2.phases)
    m3 = gapped_spectral_model(AI, 10, GapSpec(gap=1e-3), 32)
    assert not np.array_equal(m1.u, m3.u)


def test_model_residuals_and_reconstruction():
    for sym in (A, AI, AIII):
        model = gapped_spectral_model(sym, 16, GapSpec(gap=1e-2), 33)
        rep = residual(model.u, sym)
        assert rep.unitarity < 1e-13
        assert rep.symmetry == 0.0
        side = model.vectors.conj().T
        rebuilt = (model.vectors * np.exp(1j * model.phases)) @ side
        assert linalg.spectral_norm(rebuilt - model.u) < 1e-13


def test_gap_placement():
    for gap in (1e-2, 1e-8, 1e-15):
        for sym in (A, AI, AIII):
            u = gapped_spectral_model(sym, 24, GapSpec(gap=gap), 34).u
            tol = max(1e-12, 1e-10 * gap)
            assert abs(_arc_gap(u) - gap) <= tol, (sym, gap)


def test_pinned_phases_sit_at_the_gap_edge():
    model = gapped_spectral_model(A, 2, GapSpec(gap=np.pi / 2, pinned=2), 35)
    np.testing.assert_array_equal(np.sort(model.phases),
                                  [-np.pi / 2, np.pi / 2])
    model = gapped_spectral_model(A, 12, GapSpec(gap=1e-3, pinned=4), 36)
    edge = np.pi - 1e-3
    assert np.sum(np.isclose(model.phases, edge, rtol=0, atol=0)) == 2
    assert np.sum(np.isclose(model.phases, -edge, rtol=0, atol=0)) == 2


def test_phase_multiset_matches_stock_solver():
    model = gapped_spectral_model(AIII, 16, GapSpec(gap=0.3), 37)
    got = np.sort(np.angle(np.linalg.eigvals(model.u)))
    np.testing.assert_allclose(got, np.sort(model.phases), atol=1e-12)


def test_self_dual_generation_unsupported():
    with pytest.raises(UnsupportedClass):
        gapped_spectral_model(AII, 8, GapSpec(gap=0.1), 38)


def test_obstructed_unitary_has_unit_index():
    for n, seed in ((2, 1), (4, 2), (8, 3)):
        u = aiii_obstructed_unitary(n, seed)
        rep = residual(u, AIII)
        assert rep.unitarity < 1e-13 and rep.symmetry == 0.0
        assert aiii_index(u) == 1


def test_squared_root_protocol():
    u = random_gapped_unitary(AI, 12, GapSpec(gap=1e-2), 39, squared_root=True)
    rep = residual(u, AI)
    assert rep.unitarity < 1e-13 and rep.symmetry == 0.0
    v = sqrt_structured(u, AI)
    assert linalg.spectral_norm(v @ v - u) < 1e-12
    np.testing.assert_array_equal(
        u, random_gapped_unitary(AI, 12, GapSpec(gap=1e-2), 39,
                                 squared_root=True))


def test_constant_drive_matches_exact_exponential():
    rng = substream(40, 0)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    h0 = 0.5 * (x + x.conj().T)
    period = 1.5
    drive = DriveSpec(n=6, steps=16, hamiltonians=[h0] * 16, period=period)
    u = floquet_operator(drive)
    exact = linalg.expm_antihermitian(-1j * period * h0)
    assert linalg.spectral_norm(u - exact) < 1e-13


def test_drive_validation():
    h = np.eye(3, dtype=complex)
    with pytest.raises(DimensionMismatch):
        DriveSpec(n=3, steps=2, hamiltonians=[h], period=1.0)
    with pytest.raises(ValueError):
        DriveSpec(n=3, steps=1, hamiltonians=[h], period=0.0)
    skew = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    bad = DriveSpec(n=2, steps=1, hamiltonians=[skew], period=1.0)
    with pytest.raises(DimensionMismatch):
        floquet_operator(bad)


def test_symmetric_drive_sample_symmetry():
    for sym in (AI, AIII):
        drive = symmetric_drive(sym, 8, 32, 1.0, 41)
        assert drive.symmetry_defect() < 1e-13


def test_trotter_defect_decays_linearly():
    resids = {}
    for steps in (50, 200):
        drive = symmetric_drive(AI, 8, steps, 1.0, 42)
        u = floquet_operator(drive)
        resids[steps] = residual(u, AI).symmetry
    ratio = resids[50] / resids[200]
    assert 2.5 < ratio < 6.5
