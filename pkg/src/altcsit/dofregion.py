"""
Two-user DoF region: outer bound, vertices, sum-DoF optimum and convex
decomposition into time-shared corner strategies.

Points are ordered ``(d11, d12, d21, d22)``. Constraints are kept as exact
fractions; numerical routines from scipy locate candidates, which are then
snapped to small rationals and re-verified exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection

from .errors import InvalidDimension, UnboundedRegion
from .schemes.dof import CornerBasis

COORDS = ("d11", "d12", "d21", "d22")
DEDUP_TOL = 1e-9
RECON_TOL = 1e-10
_SNAP_DENOMINATOR = 10**6


def _frac(x):
    if isinstance(x, (Fraction, int, np.integer)):
        return Fraction(int(x)) if not isinstance(x, Fraction) else x
    return Fraction(float(x)).limit_denominator(_SNAP_DENOMINATOR)


@dataclass(frozen=True)
class DofPolytope:
    """
    ``{d : A d <= b}`` over the DoF coordinates.

    ``A`` and ``b`` hold exact fractions. Nonnegativity is part of the
    description, not implicit.
    """

    A: tuple
    b: tuple

    def __post_init__(self):
        A = tuple(tuple(Fraction(x) for x in row) for row in self.A)
        b = tuple(Fraction(x) for x in self.b)
        if len(A) != len(b) or not A or len({len(r) for r in A}) != 1:
            raise InvalidDimension("constraint matrix and bounds do not match")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self):
        return len(self.A[0])

    def arrays(self):
        return (np.array(self.A, dtype=float), np.array(self.b, dtype=float))

    def slack(self, point):
        """``b - A d`` for every constraint, exact when ``point`` is."""
        return tuple(bi - sum(a * x for a, x in zip(row, point)) for row, bi in zip(self.A, self.b))

    def contains(self, point, tol=1e-12):
        point = tuple(point)
        if len(point) != self.dim:
            raise InvalidDimension(f"point has {len(point)} coordinates, region has {self.dim}")
        if all(isinstance(x, (Fraction, int)) for x in point):
            return all(s >= 0 for s in self.slack(point))
        A, b = self.arrays()
        return bool(np.all(A @ np.asarray(point, float) <= b + tol))

    def active(self, point, tol=0):
        """Indices of constraints tight at ``point``."""
        return [k for k, s in enumerate(self.slack(point)) if abs(s) <= tol]


def outer_bound():
    """Four triple-sum bounds and nonnegativity of the two-user X-channel."""
    triples = [(1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)]
    nonneg = [tuple(-1 if i == j else 0 for j in range(4)) for i in range(4)]
    return DofPolytope(tuple(triples + nonneg), (1,) * 4 + (0,) * 4)


def _check_bounded(poly):
    A, b = poly.arrays()
    for i in range(poly.dim):
        for sign in (1, -1):
            c = np.zeros(poly.dim)
            c[i] = -sign
            res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * poly.dim, method="highs")
            if res.status == 3:
                raise UnboundedRegion(f"region unbounded along {'+' if sign > 0 else '-'}{COORDS[i] if poly.dim == 4 else i}")
            if res.status == 2:
                raise UnboundedRegion("region is empty")


def _interior_point(poly):
    # Chebyshev centre: maximize r subject to a.x + r|a| <= b
    A, b = poly.arrays()
    norms = np.linalg.norm(A, axis=1)
    c = np.zeros(poly.dim + 1)
    c[-1] = -1
    res = linprog(c, A_ub=np.hstack([A, norms[:, None]]), b_ub=b,
                  bounds=[(None, None)] * poly.dim + [(0, None)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        raise UnboundedRegion("region has no interior")
    return res.x[:-1]


def enumerate_vertices(poly):
    """
    All vertices of a bounded polytope.

    Candidates come from a half-space intersection, are snapped to exact
    fractions and kept only if they are feasible with at least ``dim``
    linearly independent tight constraints. Duplicates within ``1e-9``
    collapse to one.

    Raises
    ------
    UnboundedRegion
    """
    _check_bounded(poly)
    A, b = poly.arrays()
    hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), _interior_point(poly))
    vertices = []
    for cand in hs.intersections:
        snapped = tuple(_frac(x) for x in cand)
        exact = (max(abs(float(s) - x) for s, x in zip(snapped, cand)) <= DEDUP_TOL
                 and _is_vertex(poly, snapped))
        v = snapped if exact else tuple(float(x) for x in cand)
        if any(max(abs(float(x) - float(y)) for x, y in zip(v, w)) <= DEDUP_TOL for w in vertices):
            continue
        vertices.append(v)
    return sorted(vertices, key=lambda v: tuple(float(x) for x in v))


def _is_vertex(poly, point):
    if not poly.contains(point):
        return False
    tight = poly.active(point)
    if len(tight) < poly.dim:
        return False
    return np.linalg.matrix_rank(np.array([poly.A[k] for k in tight], float)) == poly.dim


@dataclass(frozen=True)
class MaxSum:
    value: object
    argmax: tuple


def max_sum(poly, weights=None):
    """
    Maximum of ``w . d`` over the region by scanning its vertices.

    Returns
    -------
    MaxSum
        Optimal value and every optimal vertex.
    """
    vertices = enumerate_vertices(poly)
    w = [Fraction(1)] * poly.dim if weights is None else list(weights)
    if len(w) != poly.dim:
        raise InvalidDimension("weight vector length does not match the region")
    exact = all(isinstance(x, (Fraction, int)) for x in w)
    scores = []
    for v in vertices:
        if exact and all(isinstance(x, Fraction) for x in v):
            scores.append(sum(Fraction(a) * x for a, x in zip(w, v)))
        else:
            scores.append(float(np.dot(np.asarray(w, float), np.asarray(v, float))))
    best = max(scores)
    argmax = tuple(v for v, s in zip(vertices, scores) if abs(float(s) - float(best)) <= DEDUP_TOL)
    return MaxSum(best, argmax)


def _generators():
    return np.array(CornerBasis.vectors, dtype=float)


def decompose(point):
    """
    Convex weights over the corners ``K, L, M, N, O, P`` reproducing ``point``.

    Returns
    -------
    tuple or None
        Six weights in corner order (exact fractions when the point and the
        weights admit them), with the least weight on ``P``, or None when the point lies outside the convex
        hull of the corners.
    """
    point = tuple(point)
    if len(point) != 4:
        raise InvalidDimension("a DoF point has four coordinates")
    G = _generators()
    target = np.asarray(point, float)
    # least use of the synergistic corner makes the choice unique
    res = linprog(np.eye(6)[5], A_eq=np.vstack([G.T, np.ones(6)]), b_eq=np.append(target, 1.0),
                  bounds=[(0, None)] * 6, method="highs")
    if res.status != 0:
        return None
    alpha = np.clip(res.x, 0, None)
    # polish on the support so the reconstruction meets the tight tolerance
    support = alpha > 1e-12
    M = np.vstack([G.T, np.ones(6)])[:, support]
    refined, *_ = np.linalg.lstsq(M, np.append(target, 1.0), rcond=None)
    if np.all(refined >= -1e-14):
        alpha = np.zeros(6)
        alpha[support] = np.clip(refined, 0, None)
    if np.abs(G.T @ alpha - target).max() > 1e-9 or abs(alpha.sum() - 1) > 1e-9:
        return None
    if all(isinstance(x, (Fraction, int)) for x in point):
        snapped = tuple(_frac(a) for a in alpha)
        if sum(snapped) == 1 and _combine(snapped) == tuple(Fraction(x) for x in point):
            return snapped
    return tuple(float(a) for a in alpha)


def _combine(weights):
    return tuple(sum(w * g[i] for w, g in zip(weights, CornerBasis.vectors)) for i in range(4))


def region_membership(point):
    """True iff ``point`` is a time-sharing combination of the corners."""
    return decompose(point) is not None


def reconstruction_error(weights, point):
    """Max-norm gap between the weighted corners and ``point``."""
    return max(abs(float(x) - float(y)) for x, y in zip(_combine(weights), point))


def closed_form_weights(point, variant="corrected"):
    """
    Closed-form corner weights.

    For ``sum(d) <= 1`` the point is split over the unit corners with the
    remaining time idle. ``variant="printed"`` charges the idle time to the
    ``P`` corner instead of ``O``, which only reconstructs on the face
    ``sum(d) == 1``. For ``sum(d) > 1`` the formula distributes the excess
    over the unit corners and ``O``; it is kept as written and its errors
    are surfaced by :func:`closed_form_report`.
    """
    d = [Fraction(x) if isinstance(x, (Fraction, int)) else x for x in point]
    total = sum(d)
    if total <= 1:
        if variant == "printed":
            return (*d, 0, 1 - total)
        return (*d, 1 - total, 0)
    units = tuple((2 * d[i] - total + 1) / 3 for i in range(4))
    return (*units, total - 1, 0)


@dataclass(frozen=True)
class ClosedFormCheck:
    point: tuple
    weights: tuple
    weight_sum: object
    error: float
    ok: bool


def closed_form_report(points, variant="corrected"):
    """Check :func:`closed_form_weights` against each point; never raises."""
    out = []
    for p in points:
        w = closed_form_weights(p, variant)
        err = reconstruction_error(w, p)
        s = sum(w)
        ok = err <= RECON_TOL and abs(float(s) - 1) <= 1e-12 and min(float(x) for x in w) >= -1e-12
        out.append(ClosedFormCheck(tuple(p), tuple(w), s, err, ok))
    return out


def _fmt(x):
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def export_region(poly=None):
    """
    Structured-text description: one ``constraint`` line per half-space,
    one ``vertex`` line per vertex, then the sum-DoF optimum.
    """
    poly = outer_bound() if poly is None else poly
    names = COORDS if poly.dim == 4 else tuple(f"x{i + 1}" for i in range(poly.dim))
    lines = [f"# region dim={poly.dim} constraints={len(poly.A)}"]
    for row, bi in zip(poly.A, poly.b):
        lhs = " ".join(f"{'+' if a >= 0 else '-'}{abs(a)}*{n}" for a, n in zip(row, names) if a != 0)
        lines.append(f"constraint {lhs} <= {bi}")
    for v in enumerate_vertices(poly):
        lines.append("vertex " + ",".join(_fmt(x) for x in v))
    best = max_sum(poly)
    for v in best.argmax:
        lines.append(f"max_sum {_fmt(best.value)} at " + ",".join(_fmt(x) for x in v))
    return "\n".join(lines) + "\n"
