"""Shared naive oracles for cross-checking the fast implementations.

Everything here trades speed for obviousness: plain box scans, direct
definitions, no reduction tricks.  Tests compare library outputs against
these on small instances.
"""

import itertools
import math

import numpy as np
import pytest


def box_vectors(radius, dim):
    """All nonzero integer vectors with Euclidean norm <= radius."""
    r = int(math.floor(radius + 1e-9))
    out = []
    for k in itertools.product(range(-r, r + 1), repeat=dim):
        if any(k) and math.hypot(*k) <= radius + 1e-9:
            out.append(np.array(k, dtype=np.int64))
    return out


def naive_gauge(body, k):
    """Closed-form dilation recomputed from the membership definition."""
    kf = np.asarray(k, dtype=float)
    s = float(kf @ body.axis)
    perp = float(np.linalg.norm(kf - s * body.axis))
    if type(body).__name__ == "CylinderBody":
        return max(abs(s) / body.axial_half, perp / body.radial_half)
    return body.axial_half * abs(s) + body.radial_half * perp


def naive_lattice_points(body, lam):
    """Box scan over the documented norm bound, filtered by the gauge."""
    pts = []
    for k in box_vectors(body.search_radius(lam) + 1.0, body.dim):
        if naive_gauge(body, k) <= lam + 1e-12:
            pts.append(k)
    return pts


def naive_minima(body):
    """Successive minima by sort-and-greedy over a growing box scan."""
    n = body.dim
    lam = 1.0
    for _ in range(40):
        cand = naive_lattice_points(body, lam)
        if len(cand) >= n:
            cand.sort(
                key=lambda k: (
                    naive_gauge(body, k),
                    float(k @ k),
                    tuple(k if next(x for x in k if x != 0) > 0 else -k),
                )
            )
            chosen = []
            lambdas = []
            for k in cand:
                trial = chosen + [k]
                if np.linalg.matrix_rank(np.array(trial, dtype=float)) == len(trial):
                    chosen.append(k)
                    lambdas.append(naive_gauge(body, k))
                    if len(chosen) == n:
                        return lambdas, chosen
        lam *= 2.0
    raise AssertionError("naive minima scan failed to terminate")


def naive_violation(alpha, tau, gamma, cutoff):
    """Smallest-norm violating vector by full box scan, or None."""
    best = None
    for k in box_vectors(cutoff, alpha.size):
        nrm = float(np.linalg.norm(k))
        inner = abs(float(k @ alpha))
        if inner < gamma * nrm ** (-tau) - 1e-12 * nrm:
            key = (nrm, tuple(k if next(x for x in k if x != 0) > 0 else -k))
            if best is None or key < best[0]:
                best = (key, k)
    return None if best is None else best[1]


def torus_distance_oracle(p, q):
    """Min over the 3^n integer shifts of the Euclidean distance."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    best = math.inf
    for shift in itertools.product((-1.0, 0.0, 1.0), repeat=p.size):
        best = min(best, float(np.linalg.norm(p - q - np.array(shift))))
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
