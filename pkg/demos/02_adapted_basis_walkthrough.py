"""
Building a unimodular basis adapted to a direction
==================================================

Given a direction that passes the truncated condition, the library produces
integer vectors w_1, ..., w_n forming a determinant +-1 basis whose rays
w_j / (w_j . alpha) all point nearly along alpha.  The three guaranteed
inequalities are printed next to their observed values.
"""

import math

import numpy as np

from torusfill import DioParams, adapted_basis, normalize

phi = (1.0 + math.sqrt(5.0)) / 2.0
alpha = normalize([1.0, phi])
params = DioParams(dim=2, tau=1.0, gamma=0.4, cutoff=90.0)

ab = adapted_basis(alpha, params)
n, N, gamma = params.dim, params.cutoff, params.gamma

print("direction alpha =", alpha)
print("integer basis (columns):")
print(ab.integer_basis.matrix())
print("determinant:", ab.integer_basis.determinant)
print()

upper = n * math.factorial(n) * N**params.tau / gamma
for j in range(n):
    x = ab.multipliers[j]
    w = ab.integer_basis.matrix()[:, j]
    dev = float(np.linalg.norm(alpha - ab.directions[j]))
    dev_bound = n * math.factorial(n) / (x * (N - 1.0))
    print("column %d: w = %s" % (j + 1, w))
    print("  multiplier  x = w.alpha = %10.4f  in (%.4f, %.1f]"
          % (x, math.sqrt(3.0) / 2.0, upper))
    print("  deviation ||alpha - w/x|| = %.3e  <= %.3e" % (dev, dev_bound))

# The multipliers are the orbit times at which each basis ray returns close
# to the start; every torus point is a nonnegative combination of them.
print()
print("sum of multipliers (worst-case hitting time):",
      float(np.sum(ab.multipliers)))

# The two successive minima of the underlying search cylinder, for scale.
print("cylinder minima:", [round(v, 6) for v in ab.minima.lambdas])
