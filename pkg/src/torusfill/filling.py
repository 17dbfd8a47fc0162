"""Constructive filling-time bounds for linear flow on the n-torus.

For a unit direction alpha satisfying a truncated Diophantine condition at
cutoff N, the integer lattice admits a basis almost parallel to alpha: each
basis vector w_j splits as x_j * omega_j with omega_j a unit-normalizable
direction close to alpha and x_j = w_j . alpha > 0.  Decomposing a target
point over that basis yields an explicit orbit time T at which the orbit of
0 lands within delta of the target, and T stays below an explicit constant
times 1 / (gamma delta^tau).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diophantine import DioParams, ViolationWitness, check_truncated, require_unit
from .lattice import (
    CylinderBody,
    IntegerBasis,
    InternalInvariantError,
    MinimaResult,
    coreciprocal_body,
    det_exact,
    extract_zbasis,
    lattice_points_in,
    successive_minima,
)

__all__ = [
    "DiophantineRejection",
    "AdaptedBasis",
    "FillingCertificate",
    "critical_cutoff",
    "bound_constant",
    "filling_time_bound",
    "adapted_basis",
    "hitting_time",
]

# Validation slack for the adapted-basis inequalities; these hold with
# genuine analytic margin, the slack only absorbs float rounding.
_INVARIANT_SLACK = 1e-9


class DiophantineRejection(ValueError):
    """Input direction fails the required truncated condition."""

    def __init__(self, witness: ViolationWitness):
        self.witness = witness
        super().__init__(
            f"direction violates the truncated condition at k={witness.k}: "
            f"|k.alpha|={witness.inner:.3e} < {witness.threshold:.3e}"
        )


def _scale_constant(n: int) -> int:
    # 1 + n^2 n!: the cutoff and bound constants below are powers of it.
    return 1 + n * n * math.factorial(n)


def critical_cutoff(n: int, delta: float) -> float:
    """Smallest enumeration cutoff guaranteeing delta-filling certificates.

    Equals (1 + n^2 n!) / delta; requires 0 < delta < 1/2.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not (0.0 < delta < 0.5):
        raise ValueError("delta must lie in the open interval (0, 1/2)")
    return _scale_constant(n) / delta


def bound_constant(n: int, tau: float) -> float:
    """Constant C(n, tau) = (1 + n^2 n!)^(tau + 1) in the filling bound."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not (tau >= n - 1):
        raise ValueError("tau must satisfy tau >= n - 1")
    return float(_scale_constant(n)) ** (tau + 1.0)


def filling_time_bound(n: int, tau: float, gamma: float, delta: float) -> float:
    """Upper bound C(n, tau) / (gamma delta^tau) on the filling time."""
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    if not (0.0 < delta < 0.5):
        raise ValueError("delta must lie in (0, 1/2)")
    return bound_constant(n, tau) / (gamma * delta**tau)


@dataclass(frozen=True)
class AdaptedBasis:
    """Integer basis adapted to a direction.

    ``integer_basis`` columns w_j satisfy w_j . alpha = multipliers[j] > 0,
    ``directions[j] = w_j / multipliers[j]`` is close to alpha, and

        sqrt(3)/2 < multipliers[j] <= n n! N^tau / gamma,
        ||alpha - directions[j]|| <= n n! / (multipliers[j] (N - 1)).
    """

    alpha: np.ndarray
    params: DioParams
    multipliers: np.ndarray
    directions: np.ndarray  # row j = directions[j]
    integer_basis: IntegerBasis
    minima: MinimaResult

    def direction_deviation_bound(self, j: int) -> float:
        n = self.params.dim
        return (
            n
            * math.factorial(n)
            / (self.multipliers[j] * (self.params.cutoff - 1.0))
        )


@dataclass(frozen=True)
class FillingCertificate:
    """Witness that the orbit of 0 reaches a delta-ball around theta.

    ``coords`` are the unique coefficients in [0, 1) of theta over the
    adapted basis; ``time`` is their weighted sum, and the orbit point at
    that time is ``endpoint_distance`` away from theta (torus metric).
    """

    theta: tuple[float, ...]
    coords: tuple[float, ...]
    time: float
    endpoint_distance: float
    bound: float
    cutoff: float


def adapted_basis(alpha, params: DioParams, *, budget: int | None = None):
    """Construct the direction-adapted unimodular basis.

    Requires params.cutoff > 1 + n^2 n! and the direction to pass the
    truncated condition at params; rejects with the violation witness
    otherwise.  The construction enumerates integer points of the cylinder
    with axial half-extent N^tau / gamma and radius 1 / (N - 1); a
    recomputed-from-scratch exclusion check and exact determinant checks
    guard every guaranteed inequality, raising InternalInvariantError on
    any mismatch.
    """
    a = require_unit(alpha)
    n = params.dim
    if a.size != n:
        raise ValueError("alpha dimension does not match params.dim")
    if params.cutoff is None:
        raise ValueError("adapted_basis needs a finite cutoff")
    scale = _scale_constant(n)
    if not (params.cutoff > scale):
        raise ValueError(
            f"cutoff must exceed 1 + n^2 n! = {scale} for this construction"
        )
    witness = check_truncated(a, params)
    if witness is not None:
        raise DiophantineRejection(witness)

    cutoff = float(params.cutoff)
    axial = cutoff**params.tau / params.gamma
    radial = 1.0 / (cutoff - 1.0)
    tube = CylinderBody(a, axial, radial)

    # Independent restatement of the membership check: the reciprocal-extent
    # cylinder must contain no nonzero integer point.
    blockers = lattice_points_in(coreciprocal_body(tube), 1.0, budget=budget)
    if blockers.shape[0] != 0:
        raise InternalInvariantError(
            "membership passed but the reciprocal cylinder contains "
            f"integer points, e.g. {tuple(int(x) for x in blockers[0])}"
        )

    minima = successive_minima(tube, budget=budget)
    if not (minima.lambdas[-1] < math.factorial(n)):
        raise InternalInvariantError(
            "n-th minimum reached n! despite the exclusion certificate"
        )
    basis = extract_zbasis(tube, minima, budget=budget)

    cols = np.array(basis.columns, dtype=np.int64)  # row j = w_j
    x = cols.astype(float) @ a
    flip = x < 0
    if np.any(flip):
        cols[flip] = -cols[flip]
        x = np.abs(x)
        basis = IntegerBasis(
            columns=tuple(tuple(int(v) for v in row) for row in cols),
            determinant=basis.determinant * (-1 if np.sum(flip) % 2 else 1),
        )
    multiplier_cap = n * math.factorial(n) * axial
    if not np.all(x > math.sqrt(3.0) / 2.0 - _INVARIANT_SLACK):
        raise InternalInvariantError("a basis multiplier fell below sqrt(3)/2")
    if not np.all(x <= multiplier_cap * (1.0 + _INVARIANT_SLACK)):
        raise InternalInvariantError("a basis multiplier exceeded n n! N^tau / gamma")
    dirs = cols.astype(float) / x[:, None]
    dev = np.linalg.norm(a[None, :] - dirs, axis=1)
    dev_cap = n * math.factorial(n) / (cutoff - 1.0)
    if not np.all(dev * x <= dev_cap * (1.0 + _INVARIANT_SLACK)):
        raise InternalInvariantError("a basis direction strays too far from alpha")
    return AdaptedBasis(
        alpha=a,
        params=params,
        multipliers=x,
        directions=dirs,
        integer_basis=basis,
        minima=minima,
    )


def _adjugate_int(matrix: list[list[int]]) -> list[list[int]]:
    """Exact adjugate of a small integer matrix (cofactor expansion)."""
    n = len(matrix)
    adj = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            sub = [
                [matrix[i][j] for j in range(n) if j != c]
                for i in range(n)
                if i != r
            ]
            adj[c][r] = (-1) ** (r + c) * det_exact(sub)
    return adj


def hitting_time(basis: AdaptedBasis, theta, delta: float) -> FillingCertificate:
    """Explicit orbit time whose endpoint lands within delta of theta.

    theta is reduced modulo 1 on entry.  The coefficients are computed with
    an exact integer inverse of the unimodular basis matrix (no linear-solve
    tolerance exists), so coords are exact up to the float representation of
    theta itself.  The endpoint distance is guaranteed below delta whenever
    the basis cutoff is at least critical_cutoff(n, delta).
    """
    params = basis.params
    n = params.dim
    if not (0.0 < delta < 0.5):
        raise ValueError("delta must lie in (0, 1/2)")
    th = np.asarray(theta, dtype=float)
    if th.ndim != 1 or th.size != n:
        raise ValueError("theta must be an n-vector")
    th = np.mod(th, 1.0)

    cols = basis.integer_basis.matrix()  # columns w_j
    mat = [[int(cols[r, c]) for c in range(n)] for r in range(n)]
    adj = _adjugate_int(mat)
    det = basis.integer_basis.determinant
    # t = frac(M^-1 theta), computed exactly over the rationals so that huge
    # adjugate entries cannot smear the fractional parts.
    coords = []
    for r in range(n):
        acc = Fraction(0)
        for c in range(n):
            acc += Fraction(adj[r][c], det) * Fraction(th[c])
        coords.append(float(acc - math.floor(acc)))
    t = np.array(coords)
    time = float(t @ basis.multipliers)
    endpoint = np.mod(time * basis.alpha, 1.0)
    diff = np.abs(endpoint - th)
    diff = np.minimum(diff, 1.0 - diff)
    distance = float(np.linalg.norm(diff))
    return FillingCertificate(
        theta=tuple(float(v) for v in th),
        coords=tuple(float(v) for v in t),
        time=time,
        endpoint_distance=distance,
        bound=filling_time_bound(n, params.tau, params.gamma, delta),
        cutoff=float(params.cutoff),
    )
