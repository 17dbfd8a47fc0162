"""
Closed orbits with exactly known filling times
==============================================

The direction proportional to (q, 1) closes up after time sqrt(q^2 + 1),
and the closed orbit is exactly delta-dense at delta = 1 / (2 sqrt(q^2+1)).
Measuring the fill time with the grid-certified simulator reproduces the
period to within two time steps, which makes these orbits a calibration
target for the whole measurement pipeline.
"""

import math
import time

from torusfill import empirical_fill_time, resonant_demo_parameters

print(" q   expected      measured      |diff|/dt   seconds")
start_all = time.time()
for q in range(1, 6):
    p = resonant_demo_parameters(q)
    t0 = time.time()
    res = empirical_fill_time(
        p["alpha"],
        [0.0, 0.0],
        p["delta_test"],
        p["dt"],
        p["max_time"],
        grid_side=p["grid_side"],
    )
    elapsed = time.time() - t0
    expected = math.sqrt(q * q + 1.0)
    diff = abs(res.fill_time - expected) / p["dt"]
    print("%2d   %.6f     %.6f     %6.2f     %.2f"
          % (q, expected, res.fill_time, diff, elapsed))
print("total %.2fs" % (time.time() - start_all))

# The same table is available from the command line:
#   torusfill demo-resonant --q 1,2,3,4,5 --simulate
