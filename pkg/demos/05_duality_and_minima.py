"""
Successive minima and the cylinder-diamond duality
==================================================

The polar dual of a cylinder around an axis is a diamond (and vice versa),
and the products of opposite successive minima always land between 1 and n!.
Axis-aligned cylinders make every product exactly 1.
"""

import math

import numpy as np

from torusfill import (
    CylinderBody,
    duality_check,
    lattice_points_in,
    polar_body,
    successive_minima,
)

# A tilted cylinder in the plane: half-length 2 along the axis, radius 0.7.
axis = np.array([0.8, 0.6])
body = CylinderBody(axis, 2.0, 0.7)

mins = successive_minima(body)
print("cylinder minima:", [round(v, 6) for v in mins.lambdas])
print("witnesses:      ", mins.witnesses)

dual = polar_body(body)
print("polar dual is a", type(dual).__name__,
      "with the same extents (%.1f, %.1f)" % (dual.axial_half, dual.radial_half))
print("dual minima:    ", [round(v, 6) for v in successive_minima(dual).lambdas])

products = duality_check(body)
n = body.dim
print("transference products:", np.round(products, 6),
      "  band: [1, %d]" % math.factorial(n))

# Axis-aligned case: unit vectors are the witnesses on both sides.
aligned = CylinderBody(np.array([1.0, 0.0, 0.0]), 3.0, 0.4)
print("axis-aligned products:", duality_check(aligned))

# The points of the doubled body, sorted by how much dilation they need.
pts = lattice_points_in(body, 1.0)
print("%d nonzero integer points inside the cylinder itself" % len(pts))
