"""Lyapunov exponent estimators: periodic baselines and window averaging."""

import math

import numpy as np
import pytest

from qc1d import (
    EMPTY_CONTENT,
    MeasureWindow,
    Piece,
    as_length,
    comb_period_piece,
    fibonacci_kp_params,
    fibonacci_word,
    kronig_penney_discriminant,
    lyapunov_periodic,
    lyapunov_samples,
    lyapunov_window,
    suspend_with_profiles,
    unit_basis,
)


def fib_window(symbols, offset=0):
    word = fibonacci_word(16).window(offset, offset + symbols)
    return suspend_with_profiles(word, fibonacci_kp_params(3)).window


def test_gap_energy_matches_floquet_rate():
    # inside a gap the exponent per period is acosh(|D(E)|/2)
    per = comb_period_piece(3)
    e = 12.0
    disc = float(kronig_penney_discriminant(np.array([e]), 3.0)[0])
    oracle = math.acosh(abs(disc) / 2.0)
    assert oracle == pytest.approx(0.4110690768, abs=1e-9)
    assert lyapunov_periodic(per, e, 2000) == pytest.approx(oracle, abs=2e-3)


def test_band_energy_rate_vanishes():
    per = comb_period_piece(3)
    assert lyapunov_periodic(per, 27.26, 100_000) < 1e-3  # mid second band


def test_band_rate_decays_with_length():
    per = comb_period_piece(3)
    rates = [lyapunov_periodic(per, 27.26, n) for n in (1_000, 10_000, 100_000)]
    assert rates[0] > rates[1] > rates[2]
    # boundary effect ~ 1/L
    assert rates[0] / rates[2] > 30


def test_free_negative_energy():
    # free motion at E = -9 tunnels at rate sqrt(9) = 3
    free = Piece(as_length(1, unit_basis()), EMPTY_CONTENT)
    assert lyapunov_periodic(free, -9.0, 500) == pytest.approx(3.0, abs=5e-3)


def test_periodic_rejects_degenerate_input():
    per = comb_period_piece(3)
    with pytest.raises(ValueError):
        lyapunov_periodic(per, 5.0, 0)


def test_window_estimate_on_quasiperiodic_measure():
    gam = lyapunov_window(fib_window(400), np.array([3.0, 8.0, 15.0]))
    assert gam.shape == (3,)
    # frozen from a 400-symbol run; loose enough to survive float noise
    assert gam == pytest.approx([0.25707371, 0.22596991, 0.27595668], abs=1e-4)


def test_window_accepts_precompiled_factors():
    from qc1d import compile_factors

    w = fib_window(150)
    es = np.array([4.0, 11.0])
    direct = lyapunov_window(w, es)
    compiled = lyapunov_window(compile_factors(w), es)
    assert np.array_equal(direct, compiled)


def test_samples_track_single_window_estimate():
    es = np.array([3.0, 8.0, 15.0])
    got = lyapunov_samples(lambda i: fib_window(300, offset=60 * i), es, n_windows=6)
    assert got.n_windows == 6
    assert got.gamma_mean.shape == (3,) and got.gamma_stderr.shape == (3,)
    assert np.all(got.gamma_stderr > 0)
    single = lyapunov_window(fib_window(300), es)
    assert np.max(np.abs(got.gamma_mean - single)) < 0.02
    # 300 cells of length 1 or golden
    assert 300 <= got.span <= 300 * 1.62


def test_samples_constant_supplier_has_zero_spread():
    got = lyapunov_samples(lambda i: fib_window(120), np.array([5.0]), n_windows=4)
    assert got.gamma_stderr[0] == pytest.approx(0.0, abs=1e-15)
    assert got.gamma_mean[0] == pytest.approx(lyapunov_window(fib_window(120), [5.0])[0])


def test_window_origin_does_not_matter():
    w0 = fib_window(200)
    seven = as_length(7, w0.basis)
    shifted = MeasureWindow(w0.origin - seven, w0.end - seven, w0.content)
    # content coordinates are window-relative, so the rate is unchanged
    a = lyapunov_window(w0, np.array([6.0]))
    b = lyapunov_window(shifted, np.array([6.0]))
    assert a[0] == b[0]
