"""
How much of the circle fails the truncated condition
====================================================

The set of directions violating |k . alpha| >= gamma ||k||^-tau for some
0 < ||k|| <= N is a union of thin slabs around the resonance hyperplanes.
Its measure shrinks linearly in gamma once the slabs stop overlapping, which
the Monte Carlo estimate below makes visible.  Output is CSV-friendly.
"""

from torusfill import DioParams, complement_measure_estimate

SAMPLES = 50000
SEED = 123

print("gamma,fraction,stderr,ratio_to_previous")
previous = None
for gamma in (0.005, 0.01, 0.02, 0.04, 0.08):
    params = DioParams(dim=2, tau=2.0, gamma=gamma, cutoff=20.0)
    fraction, stderr = complement_measure_estimate(params, SAMPLES, SEED)
    ratio = "" if previous is None else "%.3f" % (fraction / previous)
    print("%g,%.5f,%.5f,%s" % (gamma, fraction, stderr, ratio))
    previous = fraction

# The same sweep through the command line, one gamma per call:
#   torusfill measure --n 2 --tau 2 --gamma 0.02 --N 20 --samples 50000 \
#       --seed 123 --format csv
