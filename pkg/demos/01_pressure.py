"""
Pressure of a matrix tuple
==========================

The pressure ``P(A, s)`` is the exponential growth rate of
``sum_{|w| = n} ||A_w||^s``.  Each truncation ``a_n / n`` is an upper bound,
and the telescoped difference ``(a_{2m} - a_m) / m`` converges much faster.
"""

from fractions import Fraction
import math

import numpy as np

from mixeq import fixture, pressure_estimate, pressure_s2_exact, pressure_upper
from mixeq.mats import matrix_to_strings

# A 2x2 pair that swaps the two coordinate axes with different gains.
t = fixture("cyclic2x2")
for m in t.matrices:
    print(matrix_to_strings(m))

# The truncations decrease slowly towards log 3.
est = pressure_estimate(t, 1, 12)
for n, v in est.values[:6]:
    print(f"n={n:2d}  a_n/n = {v:.6f}")
print("extrapolated", est.extrapolated, "log 3 =", math.log(3))

# At s = 2 the Frobenius sums are a linear recursion, so the pressure is
# the log spectral radius of X -> sum A_i^T X A_i.
print("P(A, 2) =", pressure_s2_exact(t), "log 5 =", math.log(5))

###############################################################################
# Scaling and powers
# ------------------
# Scaling every matrix by c shifts the pressure by s log c, and the tuple
# of all length-k products has k times the pressure.

c = Fraction(3, 2)
for s in (1.0, 2.0):
    shift = pressure_upper(t.scaled(c), s, 6) - pressure_upper(t, s, 6)
    print(f"s={s}: shift {shift:.12f}  s log c {s * math.log(c):.12f}")

###############################################################################
# A singular 3x3 pair
# -------------------
# Neither matrix is invertible, yet the pair still has pressure log 18 / 2
# at s = 1 (every cube equals 4 A).

A = fixture("prop4")
est = pressure_estimate(A, 1, 10)
print("truncations", np.round([v for _, v in est.values], 4))
print("extrapolated", est.extrapolated, "half log 18 =", 0.5 * math.log(18))
