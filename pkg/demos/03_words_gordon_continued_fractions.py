"""
Sturmian words, three-block repetitions, continued fractions
============================================================

The Fibonacci word comes out of the substitution a -> ab, b -> a, and
equally out of coding the circle rotation x -> x + alpha mod 1 at the
golden rotation number alpha = phi - 1.  Initial segments of such words
repeat three times in a row at scales given by the continued-fraction
denominators of alpha -- the combinatorial mechanism that excludes
eigenvalues for the suspended operators.
"""
from qc1d import (
    Word,
    circle_map_word,
    coefficient_bound_report,
    continued_fraction,
    count_occurrences,
    factor_complexity,
    fibonacci_word,
    gordon_scan,
    substitution_word,
)

# --- two constructions, one word ------------------------------------------
w_sub = substitution_word({"a": "ab", "b": "a"}, "a", 12)
# Coding convention: symbol 1 iff n*alpha mod 1 > 1 - beta.  At
# alpha = beta = phi - 1, reading from n = 1 with 1 -> 'a' reproduces the
# substitution fixed point symbol for symbol.
w_rot = circle_map_word("golden-1", "golden-1", (1, 1 + len(w_sub)),
                        symbols=("b", "a"))
agree = w_sub.as_str() == w_rot.as_str()
print("substitution vs circle-map coding agree on",
      len(w_sub), "symbols:", agree)

# Sturmian complexity: exactly n+1 distinct factors of every length n.
for n in (1, 2, 5, 10, 25):
    print(f"  distinct factors of length {n:>2}:", factor_complexity(w_sub, n))

# Factor statistics: 'aa' occurs, 'bb' never does.
print("occurrences of 'aa':", count_occurrences(w_sub, "aa"),
      "   of 'bb':", count_occurrences(w_sub, "bb"))

# --- continued fraction of the rotation number ----------------------------
cf = continued_fraction("golden-1", 12)
print("\ncf of phi - 1 :", list(cf.coefficients), "(all 1s)")
qs = cf.denominators()
print("denominators  :", qs[:9], "(Fibonacci numbers)")

# --- three-block repetitions (Gordon patterns) ----------------------------
# A period-p Gordon position t has x(t-p..t-1) = x(t..t+p-1) = x(t+p..t+2p-1).
# For the Fibonacci word these concentrate at the denominators; a period
# that is not a denominator shows nothing.
word = fibonacci_word(20, max_length=6000)
print("\nperiod   positions scanned   hit density")
for p in (3, 5, 8, 13, 21, 34):
    rep = gordon_scan(word, p)
    print(f"{p:>6} {rep.positions_scanned:>19} {rep.density:>12.3f}")
rep = gordon_scan(word, 7)
print(f"{7:>6} {rep.positions_scanned:>19} {rep.density:>12.3f}"
      "   <- 7 is not a denominator")

# --- a stiffer rotation number --------------------------------------------
# sqrt5 - 2 has continued fraction [0; 4, 4, 4, ...]: every partial
# quotient clears the threshold relevant for three-block repetition
# frequency arguments, and its coding word repeats at ITS denominators.
cf2 = continued_fraction("sqrt5-2", 10)
rep2 = coefficient_bound_report(cf2, threshold=4)
print("\ncf of sqrt5-2 :", list(cf2.coefficients))
print("all partial quotients >= 4:", rep2.all_satisfy,
      f"(min = {rep2.min_coefficient})")
w2 = circle_map_word("sqrt5-2", "sqrt5-2", (0, 10_000))
for q in cf2.denominators():
    if 1 < q <= len(w2) // 3:
        print(f"  q = {q:>5}: density {gordon_scan(w2, q).density:.3f}")

# Periodic words saturate at density 1 for their period, 0 otherwise.
ab = Word("ab" * 50)
print("\n'abab...' densities: p=2 ->", gordon_scan(ab, 2).density,
      "  p=3 ->", gordon_scan(ab, 3).density)
