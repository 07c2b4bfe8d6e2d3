"""
Evidence for a singular continuous spectrum
===========================================

For the Fibonacci atom train (weights c on a Delone set with gaps 1 and
phi ordered by the golden rotation) the expected picture is a zero-measure
Cantor spectrum with no eigenvalues.  No single computation proves it, but
three independent probes point the same way:

  1. the band measure of periodic approximants keeps shrinking,
  2. the trace map orbit stays bounded exactly on a thin energy set and
     escapes everywhere else, and
  3. the Lyapunov exponent over long aperiodic windows is positive for
     almost every energy (it can only vanish on the spectrum).

Together with the three-block repetitions of the underlying word (see the
words demo), which rule out exponentially decaying eigenfunctions, the
leftover spectrum can only be singular continuous.
"""
import numpy as np

from qc1d import (
    fibonacci_kp_params,
    fibonacci_kp_period_piece,
    fibonacci_kp_trace_sequence,
    fibonacci_word,
    floquet_bands,
    lyapunov_window,
    suspend_with_profiles,
)

C = 3.0  # atom weight

# --- 1. shrinking bands of periodic approximants ---------------------------
# Repeating the order-k Fibonacci word periodically gives an operator whose
# band measure inside [0, 20] decreases as k grows; the true spectrum is
# the limit of these band systems.
print("approximant order   cells   band count   measure in [0, 20]")
for order in (4, 6, 8, 10):
    piece = fibonacci_kp_period_piece(C, order)
    rep = floquet_bands(piece, 0.0, 20.0,
                        grid_points=4000 * (2 ** max(0, (order - 4) // 2)))
    n_cells = len(fibonacci_word(order))
    print(f"{order:>17} {n_cells:>7} {len(rep.bands):>12} "
          f"{rep.total_measure:>20.4f}")

# --- 2. trace map dichotomy -------------------------------------------------
# Half-traces x_k = tr(M_k)/2 of the approximant transfer matrices obey
# x_{k+1} = 2 x_k x_{k-1} - x_{k-2} with a conserved quantity.  Bounded
# orbit <=> E in the approximant spectra; escape is doubly exponential.
print("\ntrace map |x_k| along the recursion:")
for e, where in ((8.0, "inside band of order-10 approximant"),
                 (12.0, "in a gap")):
    seq = fibonacci_kp_trace_sequence(e, C, 14)
    xs = [f"{abs(x):.2e}" for x in seq.half_traces[:9]]
    print(f"  E = {e:5.2f} ({where})")
    print("    |x_0..x_8| =", " ".join(xs))
    inv = [v for v in seq.invariants if v is not None]
    print(f"    invariant spread: {max(inv) - min(inv):.2e}"
          f"   escaped at order {seq.effective_n + 1}"
          if seq.effective_n < seq.n else
          f"    invariant spread: {max(inv) - min(inv):.2e}   never escaped")

# --- 3. Lyapunov exponent over a long aperiodic window ----------------------
# gamma(E) estimated from one window of ~2500 cells.  Positive values
# dominate; the dips mark the thin candidate spectrum.
word = fibonacci_word(16)
dec = suspend_with_profiles(word, fibonacci_kp_params(3))
E = np.linspace(1.0, 20.0, 96)
gamma = lyapunov_window(dec.window, E)
print(f"\ngamma over [1, 20] from a window of {len(word)} cells "
      f"(span {float(dec.window.span):.0f}):")
print(f"  positive fraction (> 5e-4): {np.mean(gamma > 5e-4):.2f}")
print(f"  median gamma              : {np.median(gamma):.4f}")

# A crude bar chart of gamma: the spectrum shows up as the sparse low bins.
lo, hi = float(np.min(gamma)), float(np.max(gamma))
for e, g in zip(E[::4], gamma[::4]):
    bar = "#" * int(40 * (g - lo) / (hi - lo))
    print(f"  E={e:5.2f}  gamma={g:8.5f}  {bar}")
