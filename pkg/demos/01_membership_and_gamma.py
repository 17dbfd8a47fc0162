"""
Deciding the truncated condition and finding the best constant
==============================================================

A direction alpha on the unit circle either keeps all small integer
combinations |k . alpha| away from zero or it does not.  This script checks
a few directions and then asks for the largest admissible constant.
"""

import math

import numpy as np

from torusfill import DioParams, best_gamma, check_truncated, normalize, resonance_search

# The diagonal direction: only (1,0) and (0,1) fit inside norm 1, and both
# inner products equal 1/sqrt(2), comfortably above gamma = 0.5.
diag = normalize([1.0, 1.0])
print("diagonal passes at gamma=0.5, N=1:",
      check_truncated(diag, DioParams(2, 1.0, 0.5, 1.0)) is None)

# A rational direction fails as soon as the cutoff reaches its resonance.
rational = normalize([2.0, 1.0])
witness = check_truncated(rational, DioParams(2, 1.0, 0.01, 3.0))
print("rational (2,1) violated by k =", witness.k,
      "with |k.alpha| =", witness.inner)
print("resonances up to order 3:",
      [r.k for r in resonance_search(rational, 3.0)])

# The golden direction is as far from rational as a direction can be.
# Its quality constant over all ||k|| <= 90 approaches 1/sqrt(5).
phi = (1.0 + math.sqrt(5.0)) / 2.0
golden = normalize([1.0, phi])
value, argmin = best_gamma(golden, 1.0, 90.0)
print("golden direction: gamma_max = %.12f at k = %s" % (value, argmin))
print("1/sqrt(5)        = %.12f" % (1.0 / math.sqrt(5.0)))

# Fibonacci pairs are the minimizers; the next one is pushed past the cutoff.
for k in [(3, -2), (8, -5), (21, -13), (55, -34)]:
    prod = abs(np.dot(k, golden)) * np.hypot(*k)
    print("  k=%9s  |k.alpha| ||k|| = %.6f" % (k, prod))
