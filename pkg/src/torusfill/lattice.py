"""Integer points and successive minima of direction-aligned convex bodies.

Two body families are supported, both symmetric about the origin and
parameterized by a unit axis and two positive half-extents:

* ``CylinderBody(axis, a, b)``: points p with |p . axis| <= a and
  ||p - (p . axis) axis|| <= b.  Its gauge (smallest dilation containing a
  point) is max(|s|/a, ||perp||/b).
* ``DiamondBody(axis, a, b)``: gauge a |s| + b ||perp||.  This is the exact
  polar of the cylinder with the same extents, and vice versa.

Enumeration of integer points works at strongly anisotropic extents (axial
to radial ratios beyond 1e10) by reducing the integer lattice against the
body's quadratic proxy (a small LLL pass) and then running an exact
coordinate-recursive sweep over the bounding ellipsoid.  A naive box scan
over ||k|| <= lambda * sqrt(a^2 + b^2) would need more candidates than any
reasonable budget for such bodies; the reduced sweep visits roughly as many
nodes as there are points.  All reported witnesses and determinants are
integer-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .diophantine import require_unit

__all__ = [
    "DEFAULT_BUDGET",
    "MEMBERSHIP_SLACK",
    "ENTRY_LIMIT",
    "ResourceLimitError",
    "InternalInvariantError",
    "CylinderBody",
    "DiamondBody",
    "MinimaResult",
    "IntegerBasis",
    "dilation_needed",
    "lattice_points_in",
    "successive_minima",
    "polar_body",
    "coreciprocal_body",
    "duality_check",
    "extract_zbasis",
    "det_exact",
]

# Budget on enumeration candidates examined before giving up.
DEFAULT_BUDGET = 10**8

# Membership comparisons use <= with this absolute slack.
MEMBERSHIP_SLACK = 1e-12

# Candidate vectors with larger entries are discarded before exact integer
# work; keeps intermediate products comfortably inside 64-bit float range.
ENTRY_LIMIT = 2**30


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its candidate budget."""


class InternalInvariantError(RuntimeError):
    """A mathematically guaranteed property failed; indicates a bug or
    tolerance mismatch, not bad user input."""


def _unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def _as_int_matrix(rows) -> list[list[int]]:
    return [[int(x) for x in row] for row in rows]


def det_exact(matrix) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    m = _as_int_matrix(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for col in range(n - 1):
        if m[col][col] == 0:
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    m[col], m[r] = m[r], m[col]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def _rank_exact(vectors) -> int:
    """Rank of a list of integer vectors, exact over the rationals."""
    if not vectors:
        return 0
    m = _as_int_matrix(vectors)
    rows = len(m)
    cols = len(m[0])
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for r in range(rank + 1, rows):
            if m[r][col] != 0:
                f1, f2 = pr[col], m[r][col]
                m[r] = [f1 * x - f2 * y for x, y in zip(m[r], pr)]
        rank += 1
        if rank == rows:
            break
    return rank


def _minors_gcd(vectors) -> int:
    """gcd of all maximal minors of the matrix with the given columns.

    A set of j integer vectors extends to a basis of Z^n exactly when this
    gcd is 1; any superset's determinant is divisible by it, which makes it
    a sound pruning rule during basis search.
    """
    cols = _as_int_matrix(vectors)
    j = len(cols)
    n = len(cols[0])
    g = 0
    for rows in combinations(range(n), j):
        sub = [[cols[c][r] for c in range(j)] for r in rows]
        g = math.gcd(g, abs(det_exact(sub)))
        if g == 1:
            return 1
    return g


def _canonical(k) -> tuple[int, ...]:
    for x in k:
        if x != 0:
            return tuple(int(v) for v in (k if x > 0 else [-y for y in k]))
    return tuple(int(v) for v in k)


class _BodyBase:
    """Shared validation and helpers for the two body families."""

    def __init__(self, axis, axial_half: float, radial_half: float):
        a = require_unit(axis)
        if not (axial_half > 0.0 and radial_half > 0.0):
            raise ValueError("half-extents must be positive")
        if not (np.isfinite(axial_half) and np.isfinite(radial_half)):
            raise ValueError("half-extents must be finite")
        object.__setattr__(self, "axis", a)
        object.__setattr__(self, "axial_half", float(axial_half))
        object.__setattr__(self, "radial_half", float(radial_half))

    @property
    def dim(self) -> int:
        return int(self.axis.size)

    def _split(self, points):
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        s = pts @ self.axis
        perp = pts - s[:, None] * self.axis[None, :]
        perp_norm = np.linalg.norm(perp, axis=1)
        return s, perp, perp_norm, single

    def gauge(self, points):
        """Smallest dilation of the body containing each point."""
        raise NotImplementedError

    def contains(self, points, lam: float = 1.0):
        g = np.atleast_1d(self.gauge(points))
        return bool(np.all(g <= lam + MEMBERSHIP_SLACK))


@dataclass(frozen=True, eq=False, init=False)
class CylinderBody(_BodyBase):
    """Axis-aligned solid cylinder: axial half-length and radius."""

    axis: np.ndarray
    axial_half: float
    radial_half: float

    def __init__(self, axis, axial_half, radial_half):
        _BodyBase.__init__(self, axis, axial_half, radial_half)

    def gauge(self, points):
        s, _, perp_norm, single = self._split(points)
        g = np.maximum(
            np.abs(s) / self.axial_half, perp_norm / self.radial_half
        )
        return float(g[0]) if single else g

    def embed(self, points):
        """Map to coordinates where the bounding ellipsoid is a ball."""
        s, perp, _, single = self._split(points)
        out = np.concatenate(
            [(s / self.axial_half)[:, None], perp / self.radial_half], axis=1
        )
        return out[0] if single else out

    def ellipsoid_radius(self, lam: float) -> float:
        # gauge <= lam implies (s/a)^2 + (|perp|/b)^2 <= 2 lam^2
        return math.sqrt(2.0) * lam

    def search_radius(self, lam: float) -> float:
        return lam * math.hypot(self.axial_half, self.radial_half)

    def volume(self) -> float:
        n = self.dim
        return (
            2.0
            * self.axial_half
            * _unit_ball_volume(n - 1)
            * self.radial_half ** (n - 1)
        )


@dataclass(frozen=True, eq=False, init=False)
class DiamondBody(_BodyBase):
    """Exact polar of the cylinder with the same axis and extents.

    Membership at dilation lam: axial_half |p . axis| +
    radial_half ||p_perp|| <= lam.
    """

    axis: np.ndarray
    axial_half: float
    radial_half: float

    def __init__(self, axis, axial_half, radial_half):
        _BodyBase.__init__(self, axis, axial_half, radial_half)

    def gauge(self, points):
        s, _, perp_norm, single = self._split(points)
        g = self.axial_half * np.abs(s) + self.radial_half * perp_norm
        return float(g[0]) if single else g

    def embed(self, points):
        s, perp, _, single = self._split(points)
        out = np.concatenate(
            [(s * self.axial_half)[:, None], perp * self.radial_half], axis=1
        )
        return out[0] if single else out

    def ellipsoid_radius(self, lam: float) -> float:
        # (a s)^2 + (b |perp|)^2 <= (a|s| + b|perp|)^2 <= lam^2
        return float(lam)

    def search_radius(self, lam: float) -> float:
        return lam / min(self.axial_half, self.radial_half)

    def volume(self) -> float:
        n = self.dim
        return (
            2.0
            * _unit_ball_volume(n - 1)
            / (n * self.axial_half * self.radial_half ** (n - 1))
        )


@dataclass(frozen=True)
class MinimaResult:
    """Successive minima with integer witnesses.

    ``lambdas`` is nondecreasing; ``witnesses[j]`` is a linearly independent
    integer vector attaining ``lambdas[j]``.  ``scan_dilation`` records the
    dilation up to which the enumeration was provably complete.
    """

    lambdas: tuple[float, ...]
    witnesses: tuple[tuple[int, ...], ...]
    scan_dilation: float

    def witness_matrix(self) -> np.ndarray:
        return np.array(self.witnesses, dtype=np.int64).T


@dataclass(frozen=True)
class IntegerBasis:
    """Columns form a basis of Z^n: determinant exactly +-1."""

    columns: tuple[tuple[int, ...], ...]
    determinant: int

    def __post_init__(self):
        mat = [list(col) for col in self.columns]
        d = det_exact([[mat[c][r] for c in range(len(mat))] for r in range(len(mat))])
        if d != self.determinant or abs(d) != 1:
            raise InternalInvariantError("basis determinant is not +-1")

    def matrix(self) -> np.ndarray:
        return np.array(self.columns, dtype=np.int64).T


def dilation_needed(body, k) -> float:
    """Smallest lam with k in lam * body (closed-form gauge)."""
    arr = np.asarray(k)
    if arr.ndim != 1 or arr.size != body.dim:
        raise ValueError("k must be a vector matching the body dimension")
    if not np.any(arr):
        raise ValueError("k must be nonzero")
    return float(body.gauge(arr.astype(float)))


def _lll_reduce(body) -> np.ndarray:
    """Unimodular column matrix making the body's metric well conditioned.

    Reduction quality only affects enumeration speed, never correctness, so
    the pass gives up (returning the current exact basis) on iteration or
    entry-size caps.
    """
    n = body.dim
    cols = [np.zeros(n, dtype=np.int64) for _ in range(n)]
    for j in range(n):
        cols[j][j] = 1

    def gs():
        W = np.stack([body.embed(c.astype(float)) for c in cols])
        mu = np.zeros((n, n))
        q = np.zeros_like(W)
        bstar = np.zeros(n)
        for i in range(n):
            v = W[i].copy()
            for j in range(i):
                mu[i, j] = (W[i] @ q[j]) / bstar[j]
                v -= mu[i, j] * q[j]
            q[i] = v
            bstar[i] = float(v @ v)
        return mu, bstar

    delta = 0.99
    k = 1
    steps = 0
    while k < n and steps < 4000:
        steps += 1
        mu, bstar = gs()
        for j in range(k - 1, -1, -1):
            r = round(mu[k, j])
            if r != 0:
                if abs(r) > 2**20 or int(np.abs(cols[j]).max()) > 2**40:
                    return np.stack(cols, axis=1)
                cols[k] = cols[k] - np.int64(r) * cols[j]
                mu, bstar = gs()
        if bstar[k] >= (delta - mu[k, k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            cols[k - 1], cols[k] = cols[k], cols[k - 1]
            k = max(k - 1, 1)
    return np.stack(cols, axis=1)


def _fp_points(body, lam: float, budget: int, counter: list) -> np.ndarray:
    """All nonzero integer points with gauge <= lam (+ absolute slack).

    Exact sweep over the bounding ellipsoid in a reduced basis followed by a
    closed-form gauge filter.  Raises ResourceLimitError when more than
    ``budget`` candidates would be examined.
    """
    n = body.dim
    U = _lll_reduce(body)
    W = np.stack([body.embed(U[:, j].astype(float)) for j in range(n)], axis=1)
    _, R = np.linalg.qr(W)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    R = R * signs[:, None]
    rho = body.ellipsoid_radius(lam) * (1.0 + 1e-9) + 1e-12
    pad = 1e-9 * rho + 1e-12

    found_m: list[np.ndarray] = []
    partial = np.zeros((n, n))  # partial[j] = row sums Sum_{i>level} R[j,i] m_i
    coeffs = np.zeros(n, dtype=np.int64)

    def descend(level: int, rem: float):
        diag = R[level, level]
        center = -partial[level, level] / diag
        hw = math.sqrt(max(rem, 0.0)) / abs(diag) + pad / abs(diag)
        lo = math.ceil(center - hw)
        hi = math.floor(center + hw)
        if hi < lo:
            return
        counter[0] += hi - lo + 1
        if counter[0] > budget:
            raise ResourceLimitError(
                f"enumeration exceeded budget of {budget} candidates"
            )
        if level == 0:
            ms = np.arange(lo, hi + 1, dtype=np.int64)
            vals = R[0, 0] * ms + partial[0, 0]
            keep = ms[vals * vals <= rem + pad * (2 * rho + pad)]
            for m0 in keep:
                coeffs[0] = m0
                found_m.append(coeffs.copy())
            return
        for m in range(lo, hi + 1):
            contrib = R[level, level] * m + partial[level, level]
            rem_next = rem - contrib * contrib
            if rem_next < -pad * (2 * rho + pad):
                continue
            coeffs[level] = m
            partial[:level, level - 1] = (
                partial[:level, level] + m * R[:level, level]
            )
            descend(level - 1, max(rem_next, 0.0))

    partial[:, n - 1] = 0.0
    descend(n - 1, rho * rho)
    if not found_m:
        return np.empty((0, n), dtype=np.int64)
    ms = np.stack(found_m)
    pts = ms @ U.T
    pts = pts[np.any(pts != 0, axis=1)]
    if pts.shape[0] == 0:
        return np.empty((0, n), dtype=np.int64)
    g = np.atleast_1d(body.gauge(pts.astype(float)))
    pts = pts[g <= lam + MEMBERSHIP_SLACK]
    return pts


def _sorted_points(body, pts: np.ndarray) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    g = np.atleast_1d(body.gauge(pts.astype(float)))
    norm_sq = np.sum(pts * pts, axis=1)
    keys = tuple(pts[:, j] for j in range(pts.shape[1] - 1, -1, -1))
    order = np.lexsort(keys + (norm_sq, g))
    return pts[order]


def lattice_points_in(body, lam: float, *, budget: int | None = None):
    """Exactly the nonzero integer points with dilation_needed <= lam.

    Sorted by (dilation, norm, lexicographic).  Both signs of each point are
    present.  Raises ResourceLimitError if the sweep would examine more than
    ``budget`` candidates (default 1e8).
    """
    if not (lam >= 0.0 and np.isfinite(lam)):
        raise ValueError("lam must be finite and nonnegative")
    counter = [0]
    pts = _fp_points(body, lam, budget or DEFAULT_BUDGET, counter)
    return _sorted_points(body, pts)


def successive_minima(body, *, budget: int | None = None) -> MinimaResult:
    """All n successive minima with exact integer witnesses.

    The scan dilation starts at the first-minimum bound 2 / vol(body)^(1/n)
    and doubles until n independent witnesses appear; whenever the n-th
    candidate value fits inside the scanned dilation the enumeration was
    complete, so the values are exact, with ties broken by dilation, then
    norm, then lexicographic order of the sign-canonical representative.
    """
    n = body.dim
    limit = budget or DEFAULT_BUDGET
    counter = [0]
    lam = 2.0 * body.volume() ** (-1.0 / n)
    for _ in range(64):
        pts = _fp_points(body, lam, limit, counter)
        if pts.shape[0] >= n:
            reps = {}
            for row in pts:
                canon = _canonical(row)
                if canon not in reps:
                    reps[canon] = True
            cand = np.array(list(reps.keys()), dtype=np.int64)
            g = np.atleast_1d(body.gauge(cand.astype(float)))
            norm_sq = np.sum(cand * cand, axis=1)
            keys = tuple(cand[:, j] for j in range(cand.shape[1] - 1, -1, -1))
            order = np.lexsort(keys + (norm_sq, g))
            chosen: list[tuple[int, ...]] = []
            lambdas: list[float] = []
            for idx in order:
                vec = tuple(int(x) for x in cand[idx])
                if _rank_exact(chosen + [vec]) > len(chosen):
                    chosen.append(vec)
                    lambdas.append(float(g[idx]))
                    if len(chosen) == n:
                        break
            if len(chosen) == n and lambdas[-1] <= lam:
                return MinimaResult(
                    lambdas=tuple(lambdas),
                    witnesses=tuple(chosen),
                    scan_dilation=lam,
                )
        lam *= 2.0
    raise ResourceLimitError(
        "successive minima scan did not stabilize within the dilation cap"
    )


def polar_body(body):
    """Exact polar dual: cylinder <-> diamond with the same extents."""
    if isinstance(body, CylinderBody):
        return DiamondBody(body.axis, body.axial_half, body.radial_half)
    if isinstance(body, DiamondBody):
        return CylinderBody(body.axis, body.axial_half, body.radial_half)
    raise TypeError("unsupported body type")


def coreciprocal_body(body: CylinderBody) -> CylinderBody:
    """Cylinder with reciprocal extents (a superset of the exact polar).

    Involution: applying it twice returns the original extents.  Emptiness
    of its nonzero integer points implies the exact polar has first minimum
    greater than 1.
    """
    if not isinstance(body, CylinderBody):
        raise TypeError("coreciprocal_body is defined for cylinders")
    return CylinderBody(
        body.axis, 1.0 / body.axial_half, 1.0 / body.radial_half
    )


def duality_check(body, *, budget: int | None = None) -> np.ndarray:
    """Products lambda_k(polar) * lambda_{n+1-k}(body) for k = 1..n.

    Transference bounds put every product in [1, n!].
    """
    mins = successive_minima(body, budget=budget)
    polar_mins = successive_minima(polar_body(body), budget=budget)
    n = body.dim
    return np.array(
        [
            polar_mins.lambdas[k] * mins.lambdas[n - 1 - k]
            for k in range(n)
        ]
    )


def extract_zbasis(body, minima: MinimaResult, *, budget: int | None = None):
    """A basis of Z^n inside the (n * lambda_n)-dilation of the body.

    If the minima witnesses already have determinant +-1 they are returned
    unchanged.  Otherwise candidates up to dilation n * lambda_n are scanned
    greedily by (dilation, norm, lex); a candidate joins the partial basis
    when the gcd of the partial matrix's maximal minors stays 1, which is
    exactly the condition for the set to extend to a determinant +-1 basis.
    A backtracking pass with the same pruning covers the rare greedy misses.
    """
    n = body.dim
    wit = [list(w) for w in minima.witnesses]
    if len(wit) == n:
        d = det_exact([[wit[c][r] for c in range(n)] for r in range(n)])
        if abs(d) == 1:
            return IntegerBasis(
                columns=tuple(tuple(w) for w in minima.witnesses),
                determinant=d,
            )

    bound = n * minima.lambdas[-1]
    bound += MEMBERSHIP_SLACK * (1.0 + bound)
    counter = [0]
    limit = budget or DEFAULT_BUDGET
    pts = _fp_points(body, bound, limit, counter)
    reps = {}
    for row in pts:
        if int(np.abs(row).max()) > ENTRY_LIMIT:
            continue
        canon = _canonical(row)
        if canon in reps:
            continue
        if math.gcd(*(abs(x) for x in canon)) != 1:
            continue  # non-primitive vectors cannot sit in a unimodular basis
        reps[canon] = True
    cand = np.array(list(reps.keys()), dtype=np.int64)
    if cand.shape[0] < n:
        raise InternalInvariantError("too few candidates for basis extraction")
    g = np.atleast_1d(body.gauge(cand.astype(float)))
    norm_sq = np.sum(cand * cand, axis=1)
    keys = tuple(cand[:, j] for j in range(cand.shape[1] - 1, -1, -1))
    order = np.lexsort(keys + (norm_sq, g))
    ordered = [tuple(int(x) for x in cand[i]) for i in order]

    def finish(cols):
        mat = [[cols[c][r] for c in range(n)] for r in range(n)]
        d = det_exact(mat)
        return IntegerBasis(columns=tuple(cols), determinant=d)

    chosen: list[tuple[int, ...]] = []
    for vec in ordered:
        if _minors_gcd(chosen + [vec]) == 1:
            chosen.append(vec)
            if len(chosen) == n:
                return finish(chosen)

    # Greedy missed; exhaustive backtracking with the same minor-gcd pruning.
    nodes = [0]

    def search(start: int, cols: list) -> IntegerBasis | None:
        if len(cols) == n:
            return finish(cols)
        for i in range(start, len(ordered)):
            nodes[0] += 1
            if nodes[0] > limit:
                raise ResourceLimitError(
                    "basis backtracking exceeded the candidate budget"
                )
            if len(ordered) - i < n - len(cols):
                return None
            vec = ordered[i]
            if _minors_gcd(cols + [vec]) != 1:
                continue
            got = search(i + 1, cols + [vec])
            if got is not None:
                return got
        return None

    result = search(0, [])
    if result is None:
        raise InternalInvariantError(
            "no unimodular basis found within the guaranteed dilation"
        )
    return result
