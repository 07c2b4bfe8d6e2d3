"""Dirichlet eigenvalue counting via Sturm oscillation."""

import math

import numpy as np
import pytest

from qc1d import (
    EMPTY_CONTENT,
    MeasureWindow,
    as_length,
    comb_cell,
    concat,
    dirichlet_eigencount,
    unit_basis,
)


def free_window(length):
    b = unit_basis()
    return MeasureWindow(b.zero, as_length(length, b), EMPTY_CONTENT)


def kp_window(c, cells):
    body = concat([comb_cell(c)] * cells)
    return MeasureWindow(body.length.basis.zero, body.length, body.content)


def test_free_interval_counts():
    # -u'' = E u on (0, pi), u(0)=u(pi)=0: eigenvalues are n^2
    w = free_window(math.pi)
    expected = {0.5: 0, 1.0: 1, 1.5: 1, 4.0: 2, 4.5: 2, 9.5: 3, 10.0: 3}
    for e, n in expected.items():
        assert dirichlet_eigencount(w, e) == n, f"E={e}"


def test_count_includes_eigenvalue_at_threshold():
    # counting convention is closed on the right: N(E) counts eigenvalues <= E
    w = free_window(math.pi)
    assert dirichlet_eigencount(w, 1.0) == 1
    assert dirichlet_eigencount(w, 1.0 - 1e-9) == 0


def test_negative_energy_free():
    assert dirichlet_eigencount(free_window(50.0), -0.01) == 0


def test_comb_monotone_with_plateaus():
    w = kp_window(5, 30)
    energies = np.linspace(-1, 40, 42)
    counts = [dirichlet_eigencount(w, float(e)) for e in energies]
    assert counts == sorted(counts)
    # one eigenvalue per cell per band; plateaus sit exactly at multiples of 30
    assert counts[0] == 0
    assert 30 in counts and 60 in counts
    assert counts[-1] == 60


def test_comb_gap_plateau_is_flat():
    w = kp_window(5, 30)
    # (pi^2, first band of second cluster) is a spectral gap: count frozen at 30
    for e in (11.0, 12.5, 14.0):
        assert dirichlet_eigencount(w, e) == 30


def test_no_states_below_positive_comb():
    w = kp_window(5, 30)
    assert dirichlet_eigencount(w, 2.0) == 0
    assert dirichlet_eigencount(w, -5.0) == 0


def test_weyl_asymptotics_rough():
    # N(E) ~ |window| sqrt(E) / pi for large E
    w = kp_window(5, 30)
    weyl = 30 * math.sqrt(40.0) / math.pi
    assert dirichlet_eigencount(w, 40.0) == pytest.approx(weyl, rel=0.05)


def test_count_scales_with_window():
    short, long = kp_window(3, 8), kp_window(3, 16)
    for e in (5.0, 20.0, 35.0):
        n8, n16 = dirichlet_eigencount(short, e), dirichlet_eigencount(long, e)
        assert abs(n16 - 2 * n8) <= 1  # extensive up to one boundary state


def test_atoms_do_not_create_spurious_zeros():
    # a pure delta comb has no negative spectrum for positive coupling, and
    # counts must be stable against the atom sitting exactly on a node
    w = kp_window(5, 4)
    assert dirichlet_eigencount(w, 0.0) == 0
    n_lo = dirichlet_eigencount(w, 9.8)
    n_hi = dirichlet_eigencount(w, 9.9)
    assert 0 <= n_hi - n_lo <= 4
