"""
Band structure, eigenvalue counting, Lyapunov growth
====================================================

The operator -u'' + mu u for a periodic atom train mu = c * sum delta_n is
the classic example where everything is computable: the discriminant
D(E) = tr(transfer over one period) has |D| <= 2 exactly on the spectral
bands, Dirichlet eigenvalues of a finite window march through the bands,
and the Lyapunov exponent vanishes on the bands and equals acosh(|D|/2)
in the gaps.
"""
import math

import numpy as np

from qc1d import (
    MeasureWindow,
    comb_cell,
    comb_period_piece,
    concat,
    dirichlet_eigencount,
    floquet_bands,
    floquet_discriminant,
    kronig_penney_discriminant,
    lyapunov_periodic,
)

C = 3.0  # atom weight

# --- discriminant: transfer product vs closed form -------------------------
period = comb_period_piece(3)
E = np.linspace(0.01, 40.0, 9)
d_matrix = floquet_discriminant(period, E)
d_closed = kronig_penney_discriminant(E, C)
print("max |transfer - closed form| over 9 energies:",
      f"{np.max(np.abs(d_matrix - d_closed)):.2e}")

# --- bands and gaps ---------------------------------------------------------
report = floquet_bands(period, 0.0, 100.0, grid_points=6000)
print(f"\nbands of -u'' + 3*comb in [0, 100]   (total measure "
      f"{report.total_measure:.3f})")
for k, band in enumerate(report.bands, 1):
    mark = " (runs past the window)" if band.hi_clipped else ""
    print(f"  band {k}: [{band.lo:8.4f}, {band.hi:8.4f}]  "
          f"width {band.width:7.4f}{mark}")

# Upper band edges sit exactly at (n pi)^2, where D = 2 regardless of c.
print("\nupper band edges vs (n*pi)^2:")
for n, band in zip((1, 2, 3), report.bands):
    print(f"  n={n}: {band.hi:.6f} vs {(n * math.pi) ** 2:.6f}")

# --- Dirichlet eigenvalue staircase ----------------------------------------
# Counting eigenvalues <= E on a 30-cell window: the count climbs inside
# bands and is flat across gaps.
body = concat([comb_cell(3)] * 30)
window = MeasureWindow(body.basis.zero, body.length, body.content)
print("\n      E   eigenvalues <= E")
for e in (1.0, 5.0, 9.0, 9.8, 12.0, 15.0, 22.0, 39.0):
    n = dirichlet_eigencount(window, e)
    in_gap = all(not (b.lo <= e <= b.hi) for b in report.bands)
    print(f"  {e:6.1f}   {n:5d}" + ("   <- in a gap, staircase flat" if in_gap else ""))

# Weyl asymptotics as a sanity check: N(E) ~ |window| * sqrt(E) / pi.
e = 39.0
print(f"\nWeyl estimate at E={e}: "
      f"{30 * math.sqrt(e) / math.pi:.1f} vs counted "
      f"{dirichlet_eigencount(window, e)}")

# --- Lyapunov exponent ------------------------------------------------------
# In a gap the norm of the transfer product grows at rate acosh(|D|/2);
# inside a band it does not grow at all.
print("\n      E    gamma (1e4 periods)    acosh(|D|/2)")
for e in (12.0, 27.26):
    gamma = lyapunov_periodic(period, e, 10_000)
    d = abs(float(kronig_penney_discriminant(np.array([e]), C)[0]))
    closed = math.acosh(d / 2.0) if d > 2.0 else 0.0
    print(f"  {e:6.2f}   {gamma:18.6f}    {closed:12.6f}")
