"""Floquet discriminants and band extraction for periodic pieces."""

import math

import numpy as np
import pytest

from qc1d import (
    EMPTY_CONTENT,
    Piece,
    as_length,
    comb_period_piece,
    fibonacci_kp_period_piece,
    floquet_bands,
    floquet_discriminant,
    kronig_penney_discriminant,
    spectral_scan,
    unit_basis,
)


def test_discriminant_matches_closed_form():
    per = comb_period_piece(3)
    E = np.linspace(0.01, 99, 1000)
    diff = floquet_discriminant(per, E) - kronig_penney_discriminant(E, 3.0)
    assert np.max(np.abs(diff)) < 1e-10


def test_closed_form_negative_energy_branch():
    got = float(kronig_penney_discriminant(np.array([-5.0]), 3.0)[0])
    kappa = math.sqrt(5.0)
    assert got == pytest.approx(2 * math.cosh(kappa) + 3 * math.sinh(kappa) / kappa)


def test_closed_form_zero_energy():
    got = float(kronig_penney_discriminant(np.array([0.0]), 3.0)[0])
    assert got == pytest.approx(2 + 3.0)  # 2 cosh(0) + c * l


def test_band_edges_at_multiples_of_pi_squared():
    # D((n pi)^2) = 2 cos(n pi) = +/- 2 exactly: these are upper band edges
    rep = floquet_bands(comb_period_piece(3), 0.0, 100.0)
    edges = [b.hi for b in rep.bands if not b.hi_clipped]
    for n in (1, 2, 3):
        target = (n * math.pi) ** 2
        assert min(abs(e - target) for e in edges) < 1e-6


def test_band_count_and_positivity():
    rep = floquet_bands(comb_period_piece(3), 0.0, 100.0)
    assert len(rep.bands) == 4
    assert all(b.width > 0 for b in rep.bands)
    assert rep.bands[0].lo == pytest.approx(2.3799813, abs=1e-5)
    for lo_band, hi_band in zip(rep.bands, rep.bands[1:]):
        assert lo_band.hi < hi_band.lo  # separated by true gaps


def test_free_operator_is_one_clipped_band():
    free = Piece(as_length(1, unit_basis()), EMPTY_CONTENT)
    rep = floquet_bands(free, -1.0, 10.0)
    (band,) = rep.bands
    assert band.lo == pytest.approx(0.0, abs=1e-6)
    assert band.hi == 10.0 and band.hi_clipped
    assert not band.lo_clipped
    assert rep.any_clipped


def test_total_measure_adds_up():
    rep = floquet_bands(comb_period_piece(3), 0.0, 100.0)
    assert rep.total_measure == pytest.approx(sum(b.width for b in rep.bands))
    assert 0 < rep.total_measure < 100.0


def test_stronger_coupling_shrinks_bands():
    weak = floquet_bands(comb_period_piece(1), 0.0, 100.0).total_measure
    strong = floquet_bands(comb_period_piece(6), 0.0, 100.0).total_measure
    assert strong < weak


def test_fibonacci_approximants_thin_out():
    # longer quasiperiodic approximants carve more gaps per unit energy
    small = floquet_bands(fibonacci_kp_period_piece(3, 4), 0.0, 20.0)
    large = floquet_bands(fibonacci_kp_period_piece(3, 10), 0.0, 20.0, grid_points=8000)
    assert large.total_measure < small.total_measure


def test_spectral_scan_flags_match_trace():
    per = comb_period_piece(3)
    energies = np.linspace(0.1, 50, 40)
    scan = spectral_scan(per, energies)
    for row, flagged in zip(scan.rows(), scan.in_band):
        e, trace, _, _, flag = row
        assert flag == (1 if flagged else 0)
        assert flagged == (abs(trace) <= 2.0)


def test_scan_gamma_positive_in_gaps():
    per = comb_period_piece(3)
    rep = floquet_bands(per, 0.0, 50.0)
    gap_e = 0.5 * (rep.bands[0].hi + rep.bands[1].lo)
    mid_e = 0.5 * (rep.bands[1].lo + rep.bands[1].hi)
    scan = spectral_scan(per, np.array([gap_e, mid_e]))
    assert not scan.in_band[0] and scan.in_band[1]
    assert scan.gamma[0] > 0.1
