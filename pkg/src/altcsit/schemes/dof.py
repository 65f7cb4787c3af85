"""Exact DoF bookkeeping and time sharing."""

from fractions import Fraction
from numbers import Real

from ..errors import InvalidWeights
from ..scheme_ids import SchemeId
from .constructions import construction


def dof_count(scheme):
    """Symbols delivered per slot, as an exact fraction."""
    c = construction(scheme)
    return Fraction(len(c.symbols), c.n_slots)


def dof_tuple(scheme):
    """Per-message DoF ``(d_11, d_12, ..., d_KK)`` in row-major ``(rx, tx)`` order."""
    c = construction(scheme)
    counts = [[0] * c.n_tx for _ in range(c.n_rx)]
    for ref in c.symbols:
        counts[ref.rx][ref.tx] += 1
    return tuple(Fraction(n, c.n_slots) for row in counts for n in row)


_THIRD = Fraction(1, 3)
CORNERS = {
    "K": (1, 0, 0, 0),
    "L": (0, 1, 0, 0),
    "M": (0, 0, 1, 0),
    "N": (0, 0, 0, 1),
    "O": (0, 0, 0, 0),
    "P": (_THIRD,) * 4,
}


class CornerBasis:
    """Generators of the two-user DoF region, in the order K, L, M, N, O, P."""

    names = tuple(CORNERS)
    vectors = tuple(tuple(Fraction(x) for x in v) for v in CORNERS.values())

    @classmethod
    def get(cls, name):
        return cls.vectors[cls.names.index(name)]


def _fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x).limit_denominator(10**12) \
        if isinstance(x, float) else Fraction(x)


def _point(item):
    if isinstance(item, SchemeId):
        return dof_tuple(item)
    if isinstance(item, str):
        if item in CORNERS:
            return CornerBasis.get(item)
        return dof_tuple(SchemeId(item))
    if isinstance(item, Real):
        return _fraction(item)
    return tuple(_fraction(x) for x in item)


def time_share(points):
    """
    Convex combination of achievable operating points.

    Parameters
    ----------
    points : iterable of (item, weight)
        ``item`` is a :class:`SchemeId`, a corner name (``"K"`` ... ``"P"``),
        a DoF tuple, or a scalar sum-DoF. Weights are exact or float, must be
        nonnegative and sum to one.

    Returns
    -------
    tuple of Fraction or Fraction
        The shared DoF tuple, or the shared sum-DoF when any item is scalar.
    """
    items = [(_point(item), _fraction(w)) for item, w in points]
    if not items:
        raise InvalidWeights("no points to share")
    weights = [w for _, w in items]
    if any(w < 0 for w in weights):
        raise InvalidWeights("negative time-sharing weight")
    if abs(sum(weights) - 1) > Fraction(1, 10**12):
        raise InvalidWeights(f"weights sum to {sum(weights)}, not 1")
    if any(isinstance(p, Fraction) for p, _ in items):
        return sum((w * (p if isinstance(p, Fraction) else sum(p)) for p, w in items), Fraction(0))
    sizes = {len(p) for p, _ in items}
    if len(sizes) != 1:
        raise InvalidWeights("points of different dimension")
    return tuple(sum((w * p[i] for p, w in items), Fraction(0)) for i in range(sizes.pop()))
